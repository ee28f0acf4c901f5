from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("liebider._kernel", ["src/liebider/_kernel.pyx"])],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    # Pure-Python fallback kernel is used when the extension is unavailable.
    ext_modules = []

setup(ext_modules=ext_modules)
