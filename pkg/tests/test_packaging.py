import os
import re

import pytest

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
IMPORT_NAMES = {"python-dotenv": "dotenv"}


def dependency_specifiers():
    with open(os.path.join(ROOT, "pyproject.toml")) as f:
        text = f.read()
    block = re.search(r"^dependencies = \[(.*?)\]", text, re.MULTILINE | re.DOTALL).group(1)
    return re.findall(r'"([^"]+)"', block)


def declared_dependencies():
    return [re.split(r"[=<>~!]", requirement)[0] for requirement in dependency_specifiers()]


def package_sources():
    for package in ("rectcover", "config"):
        for dirpath, _, filenames in os.walk(os.path.join(ROOT, package)):
            for name in filenames:
                if name.endswith(".py"):
                    with open(os.path.join(dirpath, name)) as f:
                        yield f.read()


class TestDependencies:
    @pytest.fixture
    def sources(self):
        """Read every module of the installed packages"""
        return "\n".join(package_sources())

    def test_dependencies_are_pinned(self):
        """Test that each runtime dependency carries an exact version"""
        assert all("==" in requirement for requirement in dependency_specifiers())

    @pytest.mark.parametrize("distribution", declared_dependencies())
    def test_dependency_is_imported(self, sources, distribution):
        """Test that every declared runtime dependency is imported by the package"""
        module = IMPORT_NAMES.get(distribution, distribution).replace("-", "_")
        assert re.search(rf"^\s*(import|from) {re.escape(module)}\b", sources, re.MULTILINE)
