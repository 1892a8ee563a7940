import sys

from setuptools import setup

# The compiled eigensolver kernels are an optimization, not a requirement:
# if Cython or a C compiler is unavailable the package falls back to the
# pure-Python kernels in wpair._kernels_py at import time.
ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize

    ext_modules = cythonize(
        "src/wpair/_kernels.pyx",
        compiler_directives={
            "language_level": 3,
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )
    for ext in ext_modules:
        ext.include_dirs.append(numpy.get_include())
        ext.define_macros.append(("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION"))
except Exception as exc:  # noqa: BLE001 - any build-chain failure degrades gracefully
    sys.stderr.write(f"wpair: building without compiled kernels ({exc})\n")
    ext_modules = []

setup(ext_modules=ext_modules)
