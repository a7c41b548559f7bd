from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

ext = Pybind11Extension(
    "saari._core",
    [
        "bindings/module.cpp",
        "src/core_model.cpp",
        "src/shape_geometry.cpp",
        "src/bipolar.cpp",
        "src/dynamics.cpp",
        "src/asymptotics.cpp",
        "src/analysis.cpp",
    ],
    include_dirs=["include", "vendor", "/usr/include/eigen3"],
    cxx_std=20,
)

setup(
    packages=["saari"],
    package_dir={"": "python"},
    ext_modules=[ext],
    cmdclass={"build_ext": build_ext},
)
