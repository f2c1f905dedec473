# -*- coding: utf-8 -*-
#
# Copyright (C) 2025 The Polaron FCIQMC developers.
#
# Polaron FCIQMC is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""FCIQMC spectra of the one-dimensional Froehlich polaron."""

import os

from setuptools import find_packages, setup

readme = open('README.rst').read()

packages = find_packages(exclude=['tests', 'tests.*', 'examples',
                                  'examples.*'])

# Get the version string. Cannot be done with import!
g = {}
with open(os.path.join('polaron_fciqmc', 'version.py'), 'rt') as fp:
    exec(fp.read(), g)
    version = g['__version__']

install_requires = [
    'blinker>=1.4',
    'celery>=4.3',
    'click>=7.0',
    'Flask>=1.1',
    'jsonschema>=3.0',
    'marshmallow>=3.13',
    'numpy>=1.20',
    'scipy>=1.7',
    'Werkzeug>=0.15',
]

tests_require = [
    'check-manifest>=0.25',
    'isort>=4.3',
    'pycodestyle>=2.5',
    'pydocstyle>=3.0',
    'pytest>=5.0',
    'pytest-cov>=2.7',
]

extras_require = {
    'docs': [
        'Sphinx>=2.1',
        'sphinx-autodoc-typehints>=1.6',
        'sphinx-click>=2.2',
    ],
    'tests': tests_require,
}

setup(
    name='polaron-fciqmc',
    version=version,
    description=__doc__,
    long_description=readme,
    keywords='polaron FCIQMC quantum Monte Carlo Froehlich excited states',
    license='MIT',
    author='The Polaron FCIQMC developers',
    packages=packages,
    zip_safe=False,
    include_package_data=True,
    platforms='any',
    python_requires='>=3.7',
    install_requires=install_requires,
    tests_require=tests_require,
    extras_require=extras_require,
    entry_points={
        'console_scripts': [
            'polaron-fciqmc = polaron_fciqmc.cli:cli',
        ],
    },
    classifiers=[
        'Environment :: Console',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: MIT License',
        'Operating System :: OS Independent',
        'Programming Language :: Python',
        'Topic :: Scientific/Engineering :: Physics',
        'Programming Language :: Python :: 3',
        'Development Status :: 3 - Alpha',
    ],
)
