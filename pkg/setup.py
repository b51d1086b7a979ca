from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "cubefree._kernels._ext",
                ["src/cubefree/_kernels/_ext.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    # No Cython: install pure-Python only, the package falls back at import.
    ext_modules = []

setup(ext_modules=ext_modules)
