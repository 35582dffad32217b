from setuptools import setup, find_packages

setup(
    name="saxl-graphs",
    version="0.1.0",
    description="Bases, generalised Saxl graphs and related invariants of finite permutation groups",
    long_description=open("README.md", "r", encoding="utf-8").read(),
    long_description_content_type="text/markdown",
    packages=find_packages(exclude=["examples", "examples.*"]),
    install_requires=["numpy", "pandas", "sympy", "networkx", "pydot<4"],
    entry_points={"console_scripts": ["saxl-graphs = saxl_graphs.cli:main"]},
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Programming Language :: Python :: 3.11",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    python_requires=">=3.10",
)
