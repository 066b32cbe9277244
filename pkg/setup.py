"""Build the optional compiled kernel extension.

The package is fully functional without the extension; molskit.kernels
falls back to the pure-Python implementation when the import fails.
Run `python setup.py build_ext --inplace` to compile in place.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

if cythonize is not None:
    ext_modules = cythonize(
        [Extension("molskit._kernels", ["src/molskit/_kernels.pyx"])],
        language_level=3,
    )
else:
    ext_modules = []

setup(ext_modules=ext_modules)
