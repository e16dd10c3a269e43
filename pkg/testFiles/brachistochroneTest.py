#!/usr/bin/env python
##############################################################################
#Version: 2.0
#Package: xxzgeom
#
#Description: Unit test for the quantum brachistochrone
##############################################################################

import os
import sys
import unittest
sys.path.insert(0, os.path.join(os.path.dirname(os.path.abspath(__file__)),
                                '..', 'source'))

import numpy as np

import brachistochrone as bc
import milburnDynamics as md
from xxzErrors import DomainError
from xxzModel import ModelParams


class BrachistochroneTest(unittest.TestCase):

    def setUp(self):
        self.p = ModelParams(0.65, alpha=0.2)

    def testClosedFormValues(self):
        '''J = 0.65, alpha = 0.2'''
        root = np.sqrt(4 * 0.2 ** 2 * 0.65 ** 2 + 1)
        self.assertAlmostEqual(bc.vHsMax(self.p),
                               8 * 0.65 ** 2 * np.sqrt(2) * 0.2 * root,
                               places=14)
        self.assertAlmostEqual(bc.vHsMax(self.p), 0.987793, delta=1e-6)
        self.assertAlmostEqual(bc.lHsAtC1(self.p), 1.899602, delta=1e-6)
        self.assertAlmostEqual(bc.tMin(self.p), 1.923077, delta=1e-6)
        self.assertAlmostEqual(bc.tMin(self.p), 1 / (4 * 0.65 * 0.2),
                               delta=1e-15)
        self.assertAlmostEqual(bc.etaAtTMin(self.p), 2.5, places=14)

    def testNoDecoherence(self):
        '''alpha = 0 and J = 0 have no finite optimum'''
        with self.assertRaises(DomainError) as ctx:
            bc.tMin(self.p.replace(alpha=0.0))
        self.assertIn('no finite optimum', str(ctx.exception))
        with self.assertRaises(DomainError):
            bc.solveBrachistochrone(ModelParams(0.0, alpha=0.2))

    def testOptimalStateIsPropagated(self):
        '''The optimal state is the evolved state at t_min'''
        reached = md.propagateAnalytic(self.p, md.initialState(),
                                       bc.tMin(self.p))
        np.testing.assert_allclose(bc.optimalState(self.p).mat, reached.mat,
                                   atol=1e-12)

    def testPrintedStateSwapsPopulations(self):
        '''The typeset matrix exchanges u22 and u33'''
        printed = bc.printedOptimalState(self.p)
        optimal = bc.optimalState(self.p)
        self.assertAlmostEqual(printed.u22, optimal.u33, places=14)
        self.assertAlmostEqual(printed.u33, optimal.u22, places=14)
        self.assertAlmostEqual(printed.u23, optimal.u23, places=14)
        self.assertGreater(abs(printed.u22 - optimal.u22), 1e-3)

    def testMilburnResidual(self):
        '''The trajectory satisfies the master equation'''
        self.assertLessEqual(bc.milburnResidual(self.p, bc.tMin(self.p)),
                             1e-6)
        self.assertLessEqual(bc.milburnResidual(self.p.replace(alpha=0.0),
                                                1.3), 1e-6)

    def testSpeedSupremum(self):
        '''Dense scan of V_HS approaches the printed maximum'''
        scan = bc.speedSupremumScan(self.p)
        self.assertLessEqual(scan.value, scan.formulaValue * (1 + 1e-12))
        self.assertAlmostEqual(scan.value / scan.formulaValue, 1.0,
                               delta=1e-3)

    def testSolve(self):
        '''solveBrachistochrone bundles every quantity'''
        result = bc.solveBrachistochrone(self.p)
        self.assertEqual(result.tMin, bc.tMin(self.p))
        self.assertEqual(result.vHsMax, bc.vHsMax(self.p))
        self.assertLessEqual(result.milburnResidual, 1e-6)
        self.assertAlmostEqual(result.optimalState.trace().real, 1.0)


if __name__ == '__main__':
    unittest.main()
