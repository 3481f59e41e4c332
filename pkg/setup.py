import os
import sys

from setuptools import setup

# The compiled kernels are optional: the package falls back to the pure
# Python implementations when the extension is missing or fails to build.
ext_modules = []
pyx = os.path.join("src", "zetafrob", "_speedups.pyx")
if os.path.exists(pyx) and os.environ.get("ZETAFROB_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [Extension("zetafrob._speedups", [pyx])],
            language_level=3,
        )
    except Exception as e:  # pragma: no cover
        sys.stderr.write("skipping compiled kernels: %s\n" % e)

setup(ext_modules=ext_modules)
