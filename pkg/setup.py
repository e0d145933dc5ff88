import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("PERLAB_PURE_PYTHON", "") in ("", "0"):
    try:
        from Cython.Build import cythonize
    except ImportError:  # fall back to the pure-Python kernel
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [Extension("perlab._core", ["src/perlab/_core.pyx"], extra_compile_args=["-O3"])],
            compiler_directives={"language_level": "3", "boundscheck": False, "wraparound": False},
        )

setup(ext_modules=ext_modules)
