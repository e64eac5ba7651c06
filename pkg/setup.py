from setuptools import find_packages, setup

package_name = 'kfold_deloop'

setup(
    name=package_name,
    version='0.1.0',
    packages=find_packages(exclude=['test']),
    data_files=[
        ('share/ament_index/resource_index/packages',
            ['resource/' + package_name]),
        ('share/' + package_name, ['package.xml']),
    ],
    install_requires=['setuptools', 'numpy', 'jsonschema>=4.0'],
    zip_safe=True,
    maintainer='reid',
    maintainer_email='rgraves@andrew.cmu.edu',
    description='Finite k-fold monoidal categories, enrichment and delooping checks',
    license='Apache-2.0',
    tests_require=['pytest', 'hypothesis'],
    entry_points={
        'console_scripts': [
            'kfold = kfold_deloop.cli:main',
            'kfold_corpus = kfold_deloop.utils.corpus:main',
        ],
    },
)
