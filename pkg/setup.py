#!/usr/bin/env python
import os
from setuptools import setup, find_packages
from isospec import __version__


HERE = os.path.abspath(os.path.dirname(__file__))
README = open(os.path.join(HERE, 'README.rst')).read()
NEWS = open(os.path.join(HERE, 'NEWS.rst')).read()


setup(
    name='isospec',
    version=__version__,
    description='Isospectral partner hamiltonians from intertwining '
    'operators, and their vector coherent states',
    long_description=README + '\n\n' + NEWS,
    classifiers=[],
    keywords='supersymmetry intertwining coherent-states',
    author='',
    author_email='',
    url='',
    license='Apache Software License 2.0',
    packages=find_packages(exclude=['tests', 'tests.*']),
    include_package_data=True,
    package_data={
        'isospec': ['scenarios.yaml', 'confspec.ini', 'templates/*.txt'],
    },
    zip_safe=False,
    install_requires=[
        'click>=7.0',
        'pyyaml',
        'jinja2',
        'configobj',
        'coloredlogs',
        'numpy',
        'scipy',
        'mpmath',
    ],
    extras_require={
        'dev': [
            'pytest',
            'pytest-cov',
            'sphinx',
        ],
    },
    entry_points={
        'console_scripts':
            ['isospec=isospec.cli.main:main']
    }
)
