import os

from setuptools import setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """Build the accelerator extension if possible, fall back to pure Python."""

    def run(self):
        try:
            super().run()
        except Exception as exc:
            print(f"warning: compiled kernel skipped ({exc}); using pure-Python kernel")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: {ext.name} skipped ({exc}); using pure-Python kernel")


ext_modules = []
if not os.environ.get("ODESTRUCT_PURE"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/odestruct/_kernel_cy.pyx"],
            language_level=3,
        )
    except ImportError:
        print("warning: Cython not available; using pure-Python kernel")

setup(ext_modules=ext_modules, cmdclass={"build_ext": OptionalBuildExt})
