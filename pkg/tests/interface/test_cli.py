# -*- coding: utf-8 -*-
import unittest
import io
import os
import tempfile
from contextlib import redirect_stdout
from strbox.interface.cli import main

squares_string = """
polygon(p1, (0,0, 1,0, 1,1, 0,1)).
polygon(p2, (3,0, 4,0, 4,1, 3,1)).
st_object(a, at(0), id(p1)).
st_object(a, at(1), id(p1)).
st_object(b, at(0), id(p2)).
st_object(b, at(1), id(p2)).
"""

tray_string = """
polygon(tray, (0,0, 10,0, 10,10, 0,10)).
polygon(cup, (20,20, 21,20, 21,21, 20,21)).
st_object(t, at(0), id(tray)).
st_object(c, at(0), id(cup)).
translation(c, moved).
topology(pp, moved, t, time(0,0)).
"""

inconsistent_string = """
st_object(a). st_object(b). st_object(c).
topology(pp, a, b, time(0,1)).
topology(pp, b, c, time(0,1)).
topology(dc, a, c, time(0,1)).
"""


class TestCli(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()

    def tearDown(self):
        self.tmp.cleanup()

    def write(self, name, text):
        path = os.path.join(self.tmp.name, name)
        with open(path, 'w') as f:
            f.write(text)
        return path

    def run_main(self, *argv):
        out = io.StringIO()
        with redirect_stdout(out):
            code = main(list(argv))
        return code, out.getvalue()

    def test_check_consistent(self):
        """Consistent programs exit with 0"""
        code, out = self.run_main('check', self.write('ok.lp', squares_string))
        self.assertEqual(code, 0)
        self.assertEqual(out, 'status(consistent).\n')

    def test_check_inconsistent(self):
        """Inconsistent programs exit with 1 and give a reason"""
        code, out = self.run_main('check', self.write('bad.lp', inconsistent_string))
        self.assertEqual(code, 1)
        self.assertTrue(out.startswith('status(inconsistent).\n% '))

    def test_check_error(self):
        """Malformed programs exit with 2"""
        code, _ = self.run_main('check', self.write('broken.lp', 'polygon(p1, (0,0)).'))
        self.assertEqual(code, 2)
        code, _ = self.run_main('check', os.path.join(self.tmp.name, 'missing.lp'))
        self.assertEqual(code, 2)

    def test_derive(self):
        """Directives given as options derive relations"""
        path = self.write('squares.lp', squares_string)
        code, out = self.run_main('derive', path, '--aspect', 'topology', '--pair', 'a,b', '--time', '0:1')
        self.assertEqual(code, 0)
        self.assertIn('status(derived).', out)
        self.assertIn('topology(dc, a, b, time(0,1)).', out)

    def test_derive_filters(self):
        """Filter options keep matching atoms"""
        path = self.write('squares.lp', squares_string)
        code, out = self.run_main('derive', path, '--aspect', 'movement', '--pair', 'X', '--relation', 'stationary')
        self.assertEqual(code, 0)
        self.assertIn('movement(stationary, a, time(0,1)).', out)
        self.assertNotIn('moves', out)

    def test_derive_yaml(self):
        """Results can be written as YAML to a file"""
        path = self.write('squares.lp', squares_string)
        target = os.path.join(self.tmp.name, 'results.yaml')
        code, _ = self.run_main('derive', path, '--aspect', 'size', '--format', 'yaml', '--out', target)
        self.assertEqual(code, 0)
        with open(target) as f:
            self.assertTrue(f.read().startswith('version: 1\n'))

    def test_derive_without_directives(self):
        """Programs without directives need derive options, the error exits with 2 like every other error"""
        code, _ = self.run_main('derive', self.write('squares.lp', squares_string))
        self.assertEqual(code, 2)
        code, _ = self.run_main('translate', os.path.join(self.tmp.name, 'missing.lp'))
        self.assertEqual(code, 2)

    def test_translate(self):
        """Translations print their minimal witness"""
        code, out = self.run_main('translate', self.write('tray.lp', tray_string))
        self.assertEqual(code, 0)
        self.assertIn('translation_vector(moved, -11, -11).', out)

    def test_rules(self):
        """Derived rule tables carry a version header"""
        target = os.path.join(self.tmp.name, 'derived.rules')
        code, _ = self.run_main('rules', '--budget', '100', '--seed', '3', '--out', target)
        self.assertEqual(code, 0)
        with open(target) as f:
            self.assertTrue(f.read().startswith('# version: 1\n'))

    def test_bench(self):
        """Benchmarks write a CSV table"""
        code, out = self.run_main('bench', 't4', '--n', '4', '--repeats', '1', '--seed', '1')
        self.assertEqual(code, 0)
        self.assertGreater(len(out.splitlines()), 1)

    def test_bad_arguments(self):
        """Malformed options stop argument parsing"""
        with self.assertRaises(SystemExit):
            with redirect_stdout(io.StringIO()):
                main(['derive', 'file.lp', '--time', '3'])


if __name__ == '__main__':
    unittest.main()
