#!/usr/bin/env python
from setuptools import setup, find_packages


description = """Feature-based visual servoing of a robot flange onto a cylindrical hole.
Point-to-plane features, a 5x5 feature Jacobian, velocity limited corrections,
a kinematic closed-loop simulation and a viewpoint scanner.
"""

version = '0.1.0'

setup(name='servokit',
    version=version,
    description='Feature-based visual servoing toolkit',
    keywords='robotics visual-servoing jacobian peg-in-hole simulation',
    long_description=description,
    packages=find_packages(exclude=['ez_setup', 'examples', 'tests']),
    # include non python files
    include_package_data=True,
    package_data={'servokit': ['data/*.cfg']},
    zip_safe=False,
    platforms="any",
    python_requires='>=3.8',
    install_requires=[
        'numpy>=1.17',
        'scipy>=1.4',
    ],
    extras_require={
        'test': ['pytest>=6'],
    },
    entry_points={
        'console_scripts': ['servokit = servokit.cli:main'],
    },
    classifiers=[
        'Development Status :: 3 - Alpha',
        'Environment :: Console',
        'Intended Audience :: Science/Research',
        'Operating System :: MacOS :: MacOS X',
        'Operating System :: POSIX',
        'Programming Language :: Python',
        'Programming Language :: Python :: 3',
        'Topic :: Scientific/Engineering',
    ],
)
