from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

ext = Pybind11Extension(
    "mmsplit._core",
    sources=[
        "python/bindings/module.cpp",
        "src/model.cpp",
        "src/decompose.cpp",
        "src/recommend.cpp",
        "src/report.cpp",
    ],
    include_dirs=["include", "vendor"],
    cxx_std=20,
)

setup(ext_modules=[ext], cmdclass={"build_ext": build_ext})
