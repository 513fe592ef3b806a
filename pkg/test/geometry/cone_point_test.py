#!/usr/bin/env python
import unittest
from hk_infconv.geometry.cone_point import ConePoint, ConeGeometryError
from hk_infconv.utils.constants import Constants


class ConePointTest(unittest.TestCase):

    def testMassIsTheSquaredRadius(self):
        point = ConePoint.fromMass(3, 4.)
        self.assertEqual(3, point.x())
        self.assertEqual(2., point.r())
        self.assertEqual(4., point.mass())
        self.assertFalse(point.isVertex())

    def testTinyRadiiCollapseToTheVertex(self):
        point = ConePoint(5, 1e-17)
        self.assertTrue(point.isVertex())
        self.assertEqual(Constants.VERTEX_SENTINEL, point.x())
        self.assertEqual(ConePoint.vertex(), point)
        self.assertEqual(ConePoint.vertex(), ConePoint(2, 0.))

    def testEquality(self):
        self.assertEqual(ConePoint(1, 2.), ConePoint(1, 2.))
        self.assertNotEqual(ConePoint(1, 2.), ConePoint(2, 2.))
        self.assertNotEqual(ConePoint(1, 2.), ConePoint.vertex())

    def testInvalidRadius(self):
        self.assertRaises(ConeGeometryError, ConePoint, 0, -1.)
        self.assertRaises(ConeGeometryError, ConePoint, 0, float('inf'))
        self.assertRaises(ConeGeometryError, ConePoint.fromMass, 0, -1.)


if __name__ == "__main__":
    unittest.main()
