from os.path import dirname, join, abspath, pardir
from setuptools import setup, find_packages

with open(join(dirname(__file__), 'infostruct/VERSION'), 'rb') as f:
    version = f.read().decode('ascii').strip()

this_directory = abspath(dirname(__file__))
with open(join(this_directory, pardir, 'README.md'), encoding='utf-8') as f:
    long_description = f.read()

setup(
    name='infostruct',
    version=version,
    description='Binding information, multi-information and predictive information rates '
                'of discrete random variables and Markov chains',
    long_description=long_description,
    long_description_content_type='text/markdown',
    license='MIT license',
    packages=find_packages(exclude=('tests', 'tests.*')),
    package_data={'infostruct': ['VERSION']},
    include_package_data=True,
    zip_safe=False,
    entry_points={
        'console_scripts': [
                'infostruct = infostruct.main:main',
        ],
    },
    classifiers=[
        'Development Status :: 4 - Beta',
        'Environment :: Console',
        'Operating System :: OS Independent',
        'Intended Audience :: Science/Research',
        'Intended Audience :: Developers',
        'Topic :: Scientific/Engineering :: Mathematics',
        'Programming Language :: Python',
    ],
    install_requires=["numpy>=1.17", "scipy>=1.4", "pandas", "sympy", "colorama", "tensorboardX"],
    python_requires='>=3.7',
)
