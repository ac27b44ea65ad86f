"""Build script for the optional compiled double-double core.

If Cython or a C compiler is missing the package still installs and
falls back to the pure-Python twin at import time.
"""

import os
import sys

from setuptools import setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler or Cython missing
            sys.stderr.write("warning: compiled core not built (%s); using pure Python\n" % exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            sys.stderr.write("warning: %s not built (%s)\n" % (ext.name, exc))


def extensions():
    if os.environ.get("INCGAMMA_NO_EXT"):
        return []
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    from setuptools import Extension

    # contraction off: an FMA would change rounding and break bit-identity
    # with the pure-Python twin
    ext = Extension(
        "incgamma._ddcore",
        ["src/incgamma/_ddcore.pyx"],
        extra_compile_args=["-O2", "-ffp-contract=off", "-fno-fast-math"],
    )
    return cythonize([ext], compiler_directives={"language_level": 3})


setup(ext_modules=extensions(), cmdclass={"build_ext": OptionalBuildExt})
