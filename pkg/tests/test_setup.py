# -*- coding: utf-8 -*-
import ast
import os
import unittest


class TestSetup(unittest.TestCase):
    def setUp(self):
        path = os.path.join(os.path.dirname(os.path.abspath(__file__)), '..', 'setup.py')
        with open(path) as f:
            self.tree = ast.parse(f.read())

    def test_imports(self):
        """The build script does not depend on pkg_resources"""
        modules = set()
        for node in ast.walk(self.tree):
            if isinstance(node, ast.Import):
                modules.update(alias.name for alias in node.names)
            elif isinstance(node, ast.ImportFrom):
                modules.add(node.module)
        self.assertNotIn('pkg_resources', modules)

    def test_helpers_used(self):
        """Every helper function of the build script is called"""
        defined = {node.name for node in self.tree.body if isinstance(node, ast.FunctionDef)}
        called = {
            node.func.id
            for node in ast.walk(self.tree)
            if isinstance(node, ast.Call) and isinstance(node.func, ast.Name)
        }
        self.assertEqual(defined - called, set())


if __name__ == '__main__':
    unittest.main()
