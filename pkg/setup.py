import os

from setuptools import Extension, setup

# The compiled kernels are an optional speedup: darksqueeze.kernels falls back
# to the NumPy implementation if the extension is absent or fails to build.
ext_modules = []
if not os.environ.get("DARKSQUEEZE_NO_EXT"):
    try:
        import numpy
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "darksqueeze._kernels",
                    ["src/darksqueeze/_kernels.pyx"],
                    include_dirs=[numpy.get_include()],
                    extra_compile_args=["-O3"],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                )
            ],
            language_level=3,
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
