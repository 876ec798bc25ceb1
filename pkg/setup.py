"""Build script: compiles the evaluator kernel with Cython when available.

The package is fully functional without the compiled extension; the
interpreted module is picked up automatically when the .so is absent.
"""

from setuptools import Extension, setup


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    try:
        return cythonize(
            [Extension("realizer._evalcore", ["src/realizer/_evalcore.py"])],
            compiler_directives={"language_level": "3"},
        )
    except Exception:
        # A broken toolchain should not make the package uninstallable.
        return []


setup(ext_modules=extensions())
