from setuptools import setup, find_packages

setup(
    name="fcc",
    version="0.1.0",
    packages=find_packages(exclude=['examples', 'examples.*']),
    install_requires=[
        'numpy>=1.24.0',
        'tqdm>=4.65.0',
        'python-dotenv>=1.0.0',
    ],
    extras_require={
        'test': [
            'pytest>=7.0.0',
            'hypothesis>=6.0.0',
        ],
    },
    entry_points={
        'console_scripts': [
            'fcc=src.main:entry_point',
        ],
    },
    python_requires='>=3.8',
)
