"""Build script: compiles the optional extension backend when Cython and a C
compiler are available; the package is fully functional without it (the
NumPy reference backend is selected at import)."""

import os

from setuptools import setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:           # compiler missing: stay pure
            print(f"skipping extension build: {exc}")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"skipping {ext.name}: {exc}")


ext_modules = []
if os.environ.get("SHINTANI_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/shintani/kernels/_fast.pyx"],
            language_level="3",
        )
    except ImportError:
        pass

setup(ext_modules=ext_modules, cmdclass={"build_ext": OptionalBuildExt})
