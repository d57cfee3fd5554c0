import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("PADICHYP_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [Extension("padichyp._kernels", ["src/padichyp/_kernels.pyx"],
                       extra_compile_args=["-O3"])],
            compiler_directives={"language_level": 3, "boundscheck": False, "wraparound": False},
        )

setup(ext_modules=ext_modules)
