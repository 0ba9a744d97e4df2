from setuptools import setup, find_packages

with open("README.md", "r") as fh:
    long_description = fh.read()

dev_requirements = [
      "bandit",
      "black",
      "coverage",
      "mypy",
]

setup(name='voxfuse',
      version='2020.8.0',
      description='Plane-sweep multi-view stereo and posed-convolution TSDF fusion toolkit',
      long_description=long_description,
      long_description_content_type="text/markdown",
      license='LGPLv3',
      packages=find_packages(".", exclude=["tests*"]),
      py_modules=["cli"],
      install_requires=[
            'attrs',
            'jstruct',
            'Pillow',
            'numpy',
            'scipy',
            'scikit-image',
            'plyfile',
            'click',
            'Jinja2',
      ],
      extras_require={
            'dev': dev_requirements
      },
      entry_points={
            'console_scripts': ['voxfuse=cli:main'],
      },
      classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: GNU Lesser General Public License v3 (LGPLv3)",
        "Operating System :: OS Independent",
      ],
      python_requires='>=3.7',
      zip_safe=False)
