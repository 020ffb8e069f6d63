"""Build the optional compiled product kernel.

Without Cython or a C compiler the package installs as pure Python and the
fallback kernel is used at import time.
"""

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing or failing
            print(f"warning: compiled kernel not built ({exc}); using the pure-Python kernel")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: {ext.name} not built ({exc}); using the pure-Python kernel")


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    ext = Extension("motivic_steenrod._kernel", ["src/motivic_steenrod/_kernel.pyx"],
                    extra_compile_args=["-O3"], optional=True)
    try:
        return cythonize([ext], compiler_directives={"language_level": "3"}, quiet=True)
    except Exception as exc:
        print(f"warning: Cython translation failed ({exc}); using the pure-Python kernel")
        return []


setup(ext_modules=extensions(), cmdclass={"build_ext": OptionalBuildExt})
