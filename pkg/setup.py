#!/usr/bin/env python

"""The setup script."""
from setuptools import find_packages, setup

with open("README.md") as readme_file:
    readme = readme_file.read()

# https://packaging.python.org/discussions/install-requires-vs-requirements/#install-requires
install_requires = [
    "numpy",
    "pandas",
    "scipy",
    "tqdm",
    "python-dotenv",
    "pyyaml",
]
test_requires = ["pytest>=7", "pytest-cov"]

setup(
    author="fd_backhaul developers",
    python_requires=">=3.8",
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: Apache-2.0 License",
        "Natural Language :: English",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
    ],
    description=(
        "Spectral and energy efficiency analysis of full-duplex massive MIMO "
        "backhaul with low-resolution ADCs."
    ),
    entry_points={"console_scripts": ["fd-backhaul=fd_backhaul.main:main"]},
    install_requires=install_requires,
    license="Apache-2.0",
    long_description=readme,
    include_package_data=True,
    keywords="fd_backhaul",
    name="fd_backhaul",
    packages=find_packages(include=["fd_backhaul", "fd_backhaul.*"]),
    test_suite="tests",
    tests_require=test_requires,
    version="0.1.0",
    zip_safe=False,
)
