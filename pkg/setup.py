import os

from setuptools import Extension, setup

# The compiled kernels are optional: the package falls back to the NumPy
# implementation when the extension is absent. Set RYDGATE_SKIP_EXTENSION=1
# to force a pure-Python install (e.g. on a machine without a C compiler).
extensions = []
if not os.environ.get("RYDGATE_SKIP_EXTENSION"):
    try:
        import numpy as np
        from Cython.Build import cythonize

        extensions = cythonize(
            [
                Extension(
                    "rydgate._kernels._core",
                    ["src/rydgate/_kernels/_core.pyx"],
                    include_dirs=[np.get_include()],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        extensions = []

setup(ext_modules=extensions)
