import numpy as np
from setuptools import Extension, setup

# The compiled kernels are optional: the package falls back to the pure
# NumPy implementations in patchtomo._kernels._pykernels when the
# extension is absent or fails to build.
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "patchtomo._kernels._ckernels",
                ["src/patchtomo/_kernels/_ckernels.pyx"],
                include_dirs=[np.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                optional=True,
            )
        ],
        compiler_directives={"language_level": 3},
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
