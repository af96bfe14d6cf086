"""Build script for the optional compiled propagation kernel.

The package is fully functional without the extension; ptdd.kernel falls
back to a pure-Python implementation when the compiled module is absent
or when PTDD_FORCE_PY_KERNEL=1 is set.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext = Extension(
        "ptdd._kernel",
        sources=["src/ptdd/_kernel.pyx"],
        extra_compile_args=["-O3"],
    )
    # build failure must not break a pure-Python install
    ext.optional = True
    ext_modules = cythonize([ext], language_level=3)
except ImportError:
    pass

setup(ext_modules=ext_modules)
