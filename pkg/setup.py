from setuptools import setup, find_packages

requirements = ["numpy==1.22.0",
                "scipy==1.8.0",
                "tqdm==4.59.0",
                "python-dotenv==0.17.0",
                "networkx==2.8",
                "click==8.1.2",
                "jsonschema==4.4.0",
                "pandas==1.4.2"]

setup(
    name='teichretract',
    version='0.1.0',
    license='MIT',
    description=(
        'Equivariant retraction of Teichmuller space onto its thick part'
    ),
    packages=find_packages(exclude=['tests', 'tests.*']),
    include_package_data=True,
    package_data={'teichretract': ['schema/*.json']},
    zip_safe=False,
    install_requires=requirements,
    entry_points={
        'console_scripts': ['teichretract=teichretract.cli:cli'],
    },
)
