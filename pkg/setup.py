"""Build script: compiles the optional accelerator extension.

The package is fully functional without the extension; if Cython or a C
compiler is unavailable the build falls back to the pure-Python kernels.
"""

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class _OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # pragma: no cover - depends on toolchain
            print(f"accelerator build skipped: {exc}")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # pragma: no cover
            print(f"accelerator build skipped ({ext.name}): {exc}")


try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [Extension("girthforge._core", ["src/girthforge/_core.pyx"])],
        language_level=3,
    )
except ImportError:  # pragma: no cover
    extensions = []

setup(ext_modules=extensions, cmdclass={"build_ext": _OptionalBuildExt})
