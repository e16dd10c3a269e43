#!/usr/bin/env python
##############################################################################
#Version: 2.0
#Package: xxzgeom
#
#Description:
#            Program to test pep8 conformance for the files in the package
##############################################################################

import os
import unittest

import pycodestyle

ROOT = os.path.join(os.path.dirname(os.path.abspath(__file__)), '..')
# banner comments, sys.path set-up before imports, operator line breaks
IGNORE = ['E265', 'E402', 'W503', 'W504']


class Pep8Test(unittest.TestCase):

    def testPep8Conformance(self):
        '''Source, tests and the front end follow pycodestyle'''
        style = pycodestyle.StyleGuide(ignore=IGNORE, quiet=True)
        paths = [os.path.join(ROOT, 'source'),
                 os.path.join(ROOT, 'testFiles'),
                 os.path.join(ROOT, 'xxzgeom.py')]
        report = style.check_files(paths)
        self.assertEqual(report.total_errors, 0,
                         "Found '{0}' code style errors"
                         " (and warnings).".format(report.total_errors))


if __name__ == '__main__':
    unittest.main()
