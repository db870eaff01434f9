"""Setup configuration for loopagree package."""

from setuptools import setup, find_packages

setup(
    name="loopagree",
    version="0.1.0",
    author="OpenClaw",
    description="Composition and algebraic signatures of loop agreement tasks",
    packages=find_packages(exclude=("tests", "examples*")),
    entry_points={
        "console_scripts": [
            "loopagree=loopagree.cli:main",
        ],
    },
    python_requires=">=3.12",
    install_requires=[
        "sympy>=1.14",
    ],
    classifiers=[
        "Development Status :: 4 - Beta",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.12",
        "Programming Language :: Python :: 3.13",
        "Programming Language :: Python :: Implementation :: CPython",
        "Topic :: Scientific/Engineering :: Mathematics",
        "Topic :: System :: Distributed Computing",
    ],
    extras_require={
        "test": ["pytest"],
        "build": ["pyinstaller>=6.0"],
    }
)
