#!/usr/bin/env python

"""Setup script for Multiphase."""

import setuptools

from multiphase import __project__, __version__, CLI, DESCRIPTION

try:
    README = open("README.md").read()
    CHANGELOG = open("CHANGELOG.md").read()
except FileNotFoundError:
    LONG_DESCRIPTION = "<placeholder>"
else:
    LONG_DESCRIPTION = README + '\n' + CHANGELOG

setuptools.setup(
    name=__project__,
    version=__version__,

    description=DESCRIPTION,

    packages=setuptools.find_packages(),
    package_data={'multiphase.core.test': ['files/*']},

    entry_points={
        'console_scripts': [CLI + ' = multiphase.cli.main:main']
    },

    long_description=LONG_DESCRIPTION,
    long_description_content_type='text/markdown',
    license='LGPL',
    classifiers=[
        'Development Status :: 3 - Alpha',
        'Environment :: Console',
        'License :: OSI Approved :: GNU Lesser General Public License v3 (LGPLv3)',
        'Operating System :: OS Independent',
        'Programming Language :: Python',
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.5',
        'Topic :: Scientific/Engineering :: Mathematics',
        'Topic :: Scientific/Engineering :: Physics',
    ],

    install_requires=[
        "PyYAML >= 5.1",
        "sympy >= 1.5",
    ],
)
