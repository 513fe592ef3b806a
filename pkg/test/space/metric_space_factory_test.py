#!/usr/bin/env python
import json
import os
import unittest
from test.test_helper import TestHelper
from hk_infconv.space import metric_space_factory
from hk_infconv.space.abstract_metric_space import MetricSpaceError


class MetricSpaceFactoryTest(unittest.TestCase):

    def setUp(self):
        self._folder = TestHelper.makeTemporaryFolder()

    def tearDown(self):
        TestHelper.removeFolderIfAny(self._folder)

    def _writeJson(self, fileName, content):
        path = os.path.join(self._folder, fileName)
        with open(path, 'w') as f:
            json.dump(content, f)
        return path

    def testPathGraph(self):
        space = metric_space_factory.buildPathGraph(5)
        self.assertEqual(5, space.numberOfPoints())
        self.assertAlmostEqual(1., space.distance(0, 4))
        self.assertAlmostEqual(0.25, space.distance(2, 3))

    def testBackendIsInferred(self):
        euclidean = metric_space_factory.fromDict({'coords': [[0.], [1.]]})
        graph = metric_space_factory.fromDict({'n': 2,
                                               'edges': [[0, 1, 2.]]})
        self.assertEqual('euclidean', euclidean.backend())
        self.assertEqual('graph', graph.backend())
        self.assertAlmostEqual(2., graph.distance(0, 1))

    def testUnknownBackend(self):
        self.assertRaises(MetricSpaceError, metric_space_factory.fromDict,
                          {'backend': 'manifold'})
        self.assertRaises(MetricSpaceError, metric_space_factory.fromDict,
                          {'backend': 'graph', 'n': 2})

    def testLoadNamesTheSpaceAfterTheFile(self):
        path = self._writeJson('line.json', {'coords': [[0.], [2.]]})
        space = metric_space_factory.load(path)
        self.assertEqual('line', space.name())
        self.assertAlmostEqual(2., space.distance(0, 1))

    def testSaveAndLoad(self):
        space = metric_space_factory.buildGraphMetric(
            [(0, 1, 1.), (1, 2, 0.5)], 3, 'chain')
        path = os.path.join(self._folder, 'saved.json')
        metric_space_factory.save(space, path)
        loaded = metric_space_factory.load(path)
        self.assertEqual('chain', loaded.name())
        self.assertAlmostEqual(1.5, loaded.distance(0, 2))

    def testMalformedFile(self):
        path = os.path.join(self._folder, 'broken.json')
        with open(path, 'w') as f:
            f.write('{not json')
        self.assertRaises(MetricSpaceError, metric_space_factory.load, path)
        path = self._writeJson('list.json', [1, 2])
        self.assertRaises(MetricSpaceError, metric_space_factory.load, path)


if __name__ == "__main__":
    unittest.main()
