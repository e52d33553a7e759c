from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pure-Python install; cgs._backend falls back
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("cgs._ckernels", ["src/cgs/_ckernels.pyx"], optional=True,
                   extra_compile_args=["-O3"])],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
