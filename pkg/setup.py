from os import path as os_path

from setuptools import setup, find_packages

this_directory = os_path.abspath(os_path.dirname(__file__))


# 读取文件内容
def read_file(filename):
    with open(os_path.join(this_directory, filename), encoding='utf-8') as f:
        long_description = f.read()
    return long_description


# 获取依赖
def read_requirements(filename):
    return [
        line.strip() for line in read_file(filename).splitlines()
        if line.strip() and not line.startswith('#')
    ]


setup(
    name='robricks_py',  # 包名
    python_requires='>=3.8.0',  # python环境
    long_description_content_type="text/markdown",
    long_description=read_file('README.md'),
    version="0.1.0",  # 包的版本
    description="robust multivariate statistics: robust regression, covariance, PCA, PLS and discriminant analysis",
    author="robricks",
    # 指定包信息
    packages=find_packages(exclude=("tests", "tests.*", "demos")),
    include_package_data=True,
    install_requires=read_requirements('requirements.txt'),  # 指定需要安装的依赖
    # 其他依赖版本
    extras_require={
        "test": ["pytest>=7.4", "hypothesis>=6.90"]
    },
    entry_points={
        "console_scripts": ["robricks = robricks.client.manage:main"]
    },
    license="MIT",
    keywords=['robust statistics', 'mcd', 'pls', 'pca'],
)

# python setup.py sdist bdist_wheel
