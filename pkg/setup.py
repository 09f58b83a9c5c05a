"""Build hook for the optional compiled kernel.

The package works without the extension (a pure-Python fallback is selected
at import time), so a missing compiler or Cython must not break installs.
Set TWEETLEX_NO_EXT=1 to skip the extension build entirely.
"""

import os

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """Degrade to the pure-Python backend when compilation fails."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, broken toolchain, ...
            print(f"WARNING: building tweetlex._kernels._core failed ({exc}); "
                  "falling back to the pure-Python kernels")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"WARNING: {ext.name} failed to compile ({exc}); "
                  "falling back to the pure-Python kernels")


ext_modules = []
cmdclass = {}
if not os.environ.get("TWEETLEX_NO_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("tweetlex._kernels._core",
                       ["src/tweetlex/_kernels/_core.pyx"])],
            language_level="3",
        )
        cmdclass["build_ext"] = optional_build_ext
    except ImportError:
        print("WARNING: Cython not available; building without compiled kernels")

setup(ext_modules=ext_modules, cmdclass=cmdclass)
