"""Build script: compiles the bicomplex kernel extension when possible.

The package works without the extension (bhm.core falls back to the
pure-Python kernel), so any build failure here is non-fatal.
"""

import os

from setuptools import setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # missing compiler, etc.
            print(f"warning: skipping extension build ({exc}); "
                  f"using the pure-Python kernel")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: could not build {ext.name} ({exc}); "
                  f"using the pure-Python kernel")


def extensions():
    if os.environ.get("BHM_SKIP_EXT"):
        return []
    try:
        from Cython.Build import cythonize
    except ImportError:
        print("warning: Cython not available; using the pure-Python kernel")
        return []
    from setuptools import Extension

    ext = Extension(
        "bhm._kernels",
        ["src/bhm/_kernels.pyx"],
        extra_compile_args=["-O3"],
    )
    return cythonize(
        [ext],
        compiler_directives={"language_level": "3", "embedsignature": True},
    )


setup(
    ext_modules=extensions(),
    cmdclass={"build_ext": OptionalBuildExt},
)
