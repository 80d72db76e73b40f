import numpy as np
from Cython.Build import cythonize
from setuptools import Extension, setup

ext_module = Extension(
    "rsmaris.kernels._pg_cython",
    ["src/rsmaris/kernels/_pg_cython.pyx"],
    include_dirs=[np.get_include()],
)

setup(ext_modules=cythonize(ext_module, language_level=3))
