"""Build script: compiles the event-loop kernel when Cython is available.

The package works without the extension (the pure-Python kernel is selected
at import), so a failed or skipped build is not fatal.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

ext_modules = []
if cythonize is not None:
    ext_modules = cythonize(
        [
            Extension(
                "drone_gossip.engine._kernel_cy",
                ["src/drone_gossip/engine/_kernel_cy.pyx"],
                # no -ffast-math / -march: the compiled kernel must stay
                # bit-identical to the pure-Python one
                extra_compile_args=["-O2"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
