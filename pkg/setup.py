"""Build script: compiles the optional tree-search extension when Cython is available.

The package is fully functional without the extension; spanfact.treesearch
falls back to the pure-Python kernel at import time.
"""
from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        "src/spanfact/_treekernel.pyx",
        compiler_directives={"language_level": 3, "boundscheck": False, "wraparound": False},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
