"""Build script: compiles the hot term-operation kernel as a C extension.

The extension is optional.  ``ott/_kernel.py`` is the single source of truth;
at build time it is copied to ``ott/_kernel_c.py`` and compiled with Cython so
that ``ott.kernel`` can pick the compiled twin at import and fall back to the
pure interpreter version when no compiler (or no Cython) is available.  Both
backends run the same code and produce identical results and step counts.
"""

import shutil
import warnings
from pathlib import Path

from setuptools import setup
from setuptools.command.build_ext import build_ext


def _extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    here = Path(__file__).parent
    src = here / "src" / "ott" / "_kernel.py"
    twin = src.with_name("_kernel_c.py")
    shutil.copyfile(src, twin)
    return cythonize(
        [str(twin.relative_to(here))],
        compiler_directives={"language_level": "3"},
        quiet=True,
    )


class optional_build_ext(build_ext):
    """Swallow compiler failures: the pure-Python kernel is a full fallback."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # noqa: BLE001 - any toolchain failure is fine
            warnings.warn(f"compiled kernel skipped ({exc}); using pure-Python fallback")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # noqa: BLE001
            warnings.warn(f"compiled kernel skipped ({exc}); using pure-Python fallback")


setup(ext_modules=_extensions(), cmdclass={"build_ext": optional_build_ext})
