"""Build script.  The compiled kernel extension is optional: when Cython or a
C++ toolchain is unavailable the package installs pure-Python and selects the
numpy fallback at import time."""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "coxhom._kernels._core",
                ["src/coxhom/_kernels/_core.pyx"],
                language="c++",
                extra_compile_args=["-O3", "-std=c++17"],
            )
        ],
        language_level=3,
    )
except Exception as exc:  # noqa: BLE001
    print(f"building without compiled kernels: {exc}")

setup(ext_modules=ext_modules)
