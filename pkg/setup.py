from setuptools import find_packages, setup

setup(
    name="hermlab",
    version="0.1.0",
    description="Connections, curvature and Kähler-like conditions of invariant Hermitian structures.",
    license="MIT",
    packages=find_packages(exclude=("tests", "tests.*")),
    include_package_data=True,
    python_requires=">=3.9",
    install_requires=[
        "pydantic>=2",
        "rich",
        "numpy",
        "scipy>=1.11",
    ],
    entry_points={
        "console_scripts": [
            "hermlab = hermlab.interfaces.cli:main",
        ],
    },
    classifiers=[
        "Programming Language :: Python :: 3",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    long_description=open("README.md", encoding="utf-8").read(),
    long_description_content_type="text/markdown",
)
