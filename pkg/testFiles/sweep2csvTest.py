#!/usr/bin/env python
##############################################################################
#Version: 2.0
#Package: xxzgeom
#
#Description: Unit test for the sweeps and the CSV writer
##############################################################################

import os
import shutil
import sys
import tempfile
import unittest
import warnings
from unittest import mock
sys.path.insert(0, os.path.join(os.path.dirname(os.path.abspath(__file__)),
                                '..', 'source'))

import numpy as np

import sweep2csv
from sweep2csv import SweepSpec
from xxzErrors import DomainError, OutputError, UsageError
from xxzModel import ModelParams


class Sweep2CsvTest(unittest.TestCase):

    def setUp(self):
        self.tmp = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.tmp)

    def testFormatValue(self):
        '''12 significant digits, empty for missing values'''
        self.assertEqual(sweep2csv.formatValue(0.1), '0.1')
        self.assertEqual(sweep2csv.formatValue(np.pi), '3.14159265359')
        self.assertEqual(sweep2csv.formatValue(-0.0), '0')
        self.assertEqual(sweep2csv.formatValue(None), '')
        self.assertEqual(sweep2csv.formatValue(True), 'true')
        self.assertEqual(sweep2csv.formatValue(np.bool_(False)), 'false')

    def testParseQuantities(self):
        '''Case-insensitive names, "all", unknown names rejected'''
        self.assertEqual(sweep2csv.parseQuantities('all'),
                         frozenset(sweep2csv.QUANTITIES))
        self.assertEqual(sweep2csv.parseQuantities('c, lhs'),
                         frozenset(['C', 'LHS']))
        with self.assertRaises(UsageError):
            sweep2csv.parseQuantities('C,XYZ')

    def testSweepSpec(self):
        '''Defaults and domain checks'''
        spec = SweepSpec(ModelParams(0.3, alpha=0.1))
        self.assertEqual(spec.alphas, (0.1,))
        self.assertEqual(spec.nPoints, 2001)
        with self.assertRaises(DomainError):
            SweepSpec(ModelParams(0.3), nPoints=1)
        with self.assertRaises(DomainError):
            SweepSpec(ModelParams(0.3), alphas=(0.1, -0.1))
        with self.assertRaises(UsageError):
            SweepSpec(ModelParams(0.3), method='euler')

    def testWorkerCount(self):
        '''XXZGEOM_THREADS caps the pool; junk is a usage error'''
        with mock.patch.dict(os.environ, {'XXZGEOM_THREADS': '2'}):
            self.assertEqual(sweep2csv.workerCount(), 2)
        with mock.patch.dict(os.environ, {'XXZGEOM_THREADS': 'many'}):
            with self.assertRaises(UsageError):
                sweep2csv.workerCount()
        with mock.patch.dict(os.environ, {'XXZGEOM_THREADS': '0'}):
            with self.assertRaises(UsageError):
                sweep2csv.workerCount()

    def testScanRows(self):
        '''alpha-major rows with empty columns for unrequested
           quantities'''
        spec = SweepSpec(ModelParams(0.3, 1.0, 0.5),
                         alphas=(0.0, 0.01, 0.1), etaMax=2 * np.pi,
                         nPoints=2001, quantities='C,LHS')
        rows = sweep2csv.runScan(spec)
        self.assertEqual(len(rows), 3 * 2001)
        self.assertTrue(all(len(r) == len(sweep2csv.SCAN_HEADER)
                            for r in rows))
        self.assertEqual([r[1] for r in rows[::2001]], [0.0, 0.01, 0.1])
        self.assertIsNone(rows[5][7])
        self.assertIsNone(rows[5][11])
        # alpha = 0 peaks at eta = pi/4
        self.assertAlmostEqual(rows[250][0], np.pi / 4, places=12)
        self.assertAlmostEqual(rows[250][5], 1.0, delta=1e-10)
        with mock.patch.dict(os.environ, {'XXZGEOM_THREADS': '1'}):
            again = sweep2csv.runScan(spec)
        self.assertEqual(rows, again)

    def testScanAllQuantities(self):
        '''Every column filled, phase included'''
        spec = SweepSpec(ModelParams(0.3, alpha=0.1), etaMax=2.0,
                         nPoints=101)
        with warnings.catch_warnings():
            warnings.simplefilter('ignore')
            rows = sweep2csv.runScan(spec)
        for row in rows:
            self.assertTrue(all(v is not None for v in row))
        self.assertAlmostEqual(rows[0][8], 1.0)
        self.assertAlmostEqual(rows[0][11], 0.0)

    def testWriteCsv(self):
        '''Header first, '\\n' line endings, fields as formatted'''
        path = os.path.join(self.tmp, 'out.csv')
        sweep2csv.writeCsv(path, ['a', 'b'], [[0.5, None], [1e-20, True]])
        with open(path, 'rb') as src:
            data = src.read()
        self.assertEqual(data, b'a,b\n0.5,\n1e-20,true\n')
        header, rows = sweep2csv.readCsv(path)
        self.assertEqual(header, ['a', 'b'])
        self.assertEqual(rows, [['0.5', ''], ['1e-20', 'true']])

    def testWriteCsvUnwritable(self):
        '''Missing parent directory is an output error'''
        with self.assertRaises(OutputError):
            sweep2csv.writeCsv(os.path.join(self.tmp, 'no', 'such.csv'),
                               ['a'], [])

    def testAlphaSweep(self):
        '''L_HS decreases strictly with alpha at fixed eta'''
        alphas = np.linspace(0.0, 1.0, 51)
        rows = sweep2csv.alphaSweepRows(ModelParams(0.3), 1.5, alphas,
                                        'C,LHS')
        rates = [r[6] for r in rows]
        self.assertTrue(all(b < a for a, b in zip(rates, rates[1:])))
        self.assertIsNone(rows[0][8])

    def testConcurrenceSweep(self):
        '''L_B runs from 0 to 1, V_B ends at 1/4'''
        rows = sweep2csv.concurrenceSweepRows(
            ModelParams(0.65, alpha=0.2), np.pi / 4, np.linspace(0, 1, 11),
            'C,VHS,LB,VB')
        self.assertAlmostEqual(rows[0][9], 0.0, places=12)
        self.assertAlmostEqual(rows[-1][9], 1.0, places=12)
        self.assertAlmostEqual(rows[-1][10], 0.25, places=15)
        speeds = [r[7] for r in rows]
        self.assertEqual(max(speeds), speeds[-1])

    def testGeomPhaseRows(self):
        '''Tong phase, printed closed form and their difference'''
        with warnings.catch_warnings():
            warnings.simplefilter('ignore')
            rows = sweep2csv.geomPhaseRows(ModelParams(0.09, alpha=0.06),
                                           2.0, 201, closedForm=True)
        self.assertEqual(len(rows), 201)
        self.assertTrue(all(len(r) == len(sweep2csv.PHASE_HEADER)
                            for r in rows))
        self.assertAlmostEqual(rows[0][1], 0.0)
        self.assertIsNotNone(rows[-1][2])
        self.assertIsInstance(rows[-1][4], bool)
        self.assertEqual(rows[-1][5], 0.06)
        with warnings.catch_warnings():
            warnings.simplefilter('ignore')
            bare = sweep2csv.geomPhaseRows(ModelParams(0.09, alpha=0.06),
                                           2.0, 201)
        self.assertEqual(sweep2csv.phaseHeader(),
                         ['eta', 'Phi_g_tong', 'converged', 'alpha'])
        self.assertEqual([len(r) for r in bare], [4] * 201)
        self.assertEqual([r[1] for r in bare], [r[1] for r in rows])

    def testEvolveRows(self):
        '''Populations and coherence of the propagated state'''
        rows = sweep2csv.evolveRows(ModelParams(0.3, alpha=0.1), 1.0, 11)
        self.assertEqual(len(rows[0]), len(sweep2csv.EVOLVE_HEADER))
        self.assertEqual(rows[0][3], 1.0)
        self.assertAlmostEqual(rows[-1][2], 0.6845445, delta=1e-6)
        self.assertAlmostEqual(rows[-1][5], -0.403237, delta=1e-6)

    def testWriteFigures(self):
        '''Every panel file is written with its header'''
        with warnings.catch_warnings():
            warnings.simplefilter('ignore')
            paths = sweep2csv.writeFigures(self.tmp, nPoints=101,
                                           phasePoints=201, sweepPoints=11)
        names = sorted(os.path.basename(p) for p in paths)
        self.assertEqual(names, sorted(
            ['fig3.csv', 'fig4a.csv', 'fig4b.csv', 'fig6a.csv', 'fig6b.csv',
             'fig7a.csv', 'fig7b.csv', 'fig8a.csv', 'fig8b.csv',
             'fig8-speeds.csv', 'fig9.csv']))
        header, rows = sweep2csv.readCsv(os.path.join(self.tmp,
                                                      'fig7a.csv'))
        self.assertEqual(header, sweep2csv.SCAN_HEADER)
        self.assertEqual((rows[0][5], rows[0][9]), ('0', '0'))
        self.assertEqual((rows[-1][5], rows[-1][9]), ('1', '1'))
        header, rows = sweep2csv.readCsv(os.path.join(self.tmp, 'fig9.csv'))
        self.assertEqual(header, sweep2csv.PHASE_HEADER)
        self.assertEqual(len(rows), 4 * 201)


if __name__ == '__main__':
    unittest.main()
