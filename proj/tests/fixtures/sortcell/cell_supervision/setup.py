import os
from glob import glob
from setuptools import setup

package_name = 'cell_supervision'

setup(
    name=package_name,
    version='0.3.1',
    packages=[package_name],
    data_files=[
        ('share/' + package_name, ['package.xml']),
        (os.path.join('share', package_name, 'launch'), glob('launch/*.launch.py')),
    ],
    install_requires=['setuptools'],
    zip_safe=True,
    maintainer='sortcell team',
    maintainer_email='dev@sortcell.example',
    description='Process supervision and system bring-up.',
    license='Apache-2.0',
    entry_points={
        'console_scripts': [
            'supervisor = cell_supervision.supervisor:main',
        ],
    },
)
