# pylint: disable=missing-module-docstring
import setuptools

with open("README.md", "r", encoding="utf-8") as fh:
    long_description = fh.read()

setuptools.setup(
    name="opclass",
    version="0.1.0",
    author="opclass developers",
    description=(
        "Classification of Ethereum smart contracts from their opcodes"
    ),
    long_description=long_description,
    long_description_content_type="text/markdown",
    classifiers=[
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "License :: OSI Approved :: Apache Software License",
        "Operating System :: OS Independent",
    ],
    packages=[
        "opclass",
        "opclass.core",
        "opclass.evm",
        "opclass.models",
        "opclass.pipeline",
        "opclass.processing",
    ],
    install_requires=[
        "numpy>=1.22.0",
        "scipy>=1.9.1",
        "pandas>=1.3.3",
        "requests>=2.26.0",
        "click>=8.0",
        "loguru>=0.6.0",
        "joblib>=1.1.0",
    ],
    entry_points={"console_scripts": ["opclass=opclass.cli:main"]},
    python_requires=">=3.8",
)
