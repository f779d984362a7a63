import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("DAOFORGE_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [
                Extension(
                    "daoforge.abi._keccak_ext",
                    ["src/daoforge/abi/_keccak_ext.pyx"],
                    extra_compile_args=["-O3"],
                    optional=True,
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
