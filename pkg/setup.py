"""
Setup script for the vanishing-point reconstructor CLI
"""

from setuptools import setup, find_packages
from pathlib import Path

# Read the README for long description
readme_path = Path(__file__).parent / "README.md"
long_description = readme_path.read_text() if readme_path.exists() else ""

setup(
    name="vanishing-point-reconstructor",
    version="1.0.0",
    description="3D reconstruction of moving rigid objects from one static camera via vanishing points",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=find_packages(exclude=["tests", "tests.*", "examples", "examples.*"]),
    python_requires=">=3.10",
    install_requires=[
        # Numerics
        "numpy>=1.26.0",
        "scipy>=1.11.0",
        # Tables
        "pandas>=2.1.0",
        # CLI framework
        "click>=8.1.7",
        "rich>=13.7.0",
    ],
    extras_require={
        "dev": [
            "pytest>=7.4.0",
            "pytest-cov>=4.1.0",
            "hypothesis>=6.88.0",
        ]
    },
    entry_points={
        "console_scripts": [
            "vp-recon=cli.main:main",
        ],
    },
    classifiers=[
        "Development Status :: 4 - Beta",
        "Intended Audience :: Science/Research",
        "Topic :: Scientific/Engineering :: Image Recognition",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: 3.12",
    ],
    keywords="computer-vision vanishing-point structure-from-motion 3d-reconstruction",
)
