from setuptools import setup, find_packages

setup(
    name="triangular-moments",
    version="0.1.0",
    packages=find_packages(exclude=["examples", "examples.*"]),
    install_requires=[
        "numpy>=1.21.0",
        "pandas>=1.3.0",
        "python-dotenv>=0.19.0",
    ],
    extras_require={
        "config": ["json5>=0.9.10", "PyYAML>=5.4"],
        "test": ["pytest>=6.2.0", "pytest-cov>=2.12.0", "hypothesis>=6.0.0"],
    },
    entry_points={
        "console_scripts": ["moments=src.cli.runner:main"],
    },
    description="Exact moments of triangular operators with a random matrix Monte Carlo harness",
    long_description=open("README.md").read(),
    long_description_content_type="text/markdown",
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "Topic :: Scientific/Engineering :: Mathematics",
        "Programming Language :: Python :: 3",
    ],
    python_requires=">=3.8",
)
