#!/usr/bin/env python
import os
import sys
from shutil import rmtree

from setuptools import setup, Command

NAME = 'hk_infconv'
DESCRIPTION = 'Hellinger-Kantorovich distance as inf-convolution of ' \
    'Hellinger and Wasserstein: solvers and numerical experiments'
URL = 'https://github.com/ArcetriAdaptiveOptics/hk_infconv'
EMAIL = 'lorenzo.busoni@inaf.it'
AUTHOR = 'Lorenzo Busoni'
LICENSE = 'MIT'
KEYWORDS = 'optimal transport, unbalanced transport, Hellinger, ' \
    'Wasserstein, Hellinger-Kantorovich, inf-convolution, metric cone',

here = os.path.abspath(os.path.dirname(__file__))
# Load the package's __version__.py module as a dictionary.
about = {}
with open(os.path.join(here, NAME, '__version__.py')) as f:
    exec(f.read(), about)


class UploadCommand(Command):
    """Support setup.py upload."""

    description = 'Build and publish the package.'
    user_options = []

    @staticmethod
    def status(s):
        """Prints things in bold."""
        print('\033[1m{0}\033[0m'.format(s))

    def initialize_options(self):
        pass

    def finalize_options(self):
        pass

    def run(self):
        try:
            self.status('Removing previous builds...')
            rmtree(os.path.join(here, 'dist'))
        except OSError:
            pass

        self.status('Building Source and Wheel distribution...')
        os.system('{0} setup.py sdist bdist_wheel'.format(sys.executable))

        self.status('Uploading the package to PyPI via Twine...')
        os.system('twine upload dist/*')

        self.status('Pushing git tags...')
        os.system('git tag v{0}'.format(about['__version__']))
        os.system('git push --tags')

        sys.exit()


setup(name=NAME,
      description=DESCRIPTION,
      version=about['__version__'],
      classifiers=['Development Status :: 3 - Alpha',
                   'Operating System :: POSIX :: Linux',
                   'Programming Language :: Python :: 3',
                   'Topic :: Scientific/Engineering :: Mathematics',
                   ],
      long_description=open('README.md').read(),
      long_description_content_type='text/markdown',
      url=URL,
      author_email=EMAIL,
      author=AUTHOR,
      license=LICENSE,
      keywords=KEYWORDS,
      packages=['hk_infconv',
                'hk_infconv.distances',
                'hk_infconv.geometry',
                'hk_infconv.harness',
                'hk_infconv.hilbert',
                'hk_infconv.infconv',
                'hk_infconv.measure',
                'hk_infconv.scripts',
                'hk_infconv.space',
                'hk_infconv.uot',
                'hk_infconv.utils',
                ],
      entry_points={
          'console_scripts': [
              'hk_infconv=hk_infconv.scripts.hk_infconv_cli:main',
          ],
      },
      package_data={
          'hk_infconv': ['conf/hk_infconv.conf'],
      },
      install_requires=["plico>=0.30",
                        "numpy",
                        "scipy",
                        "six",
                        ],
      include_package_data=True,
      test_suite='test',
      cmdclass={'upload': UploadCommand, },
      )
