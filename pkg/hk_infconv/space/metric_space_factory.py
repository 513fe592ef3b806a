import json
import os
from hk_infconv.space.abstract_metric_space import \
    AbstractFiniteMetricSpace, MetricSpaceError
from hk_infconv.space.euclidean_metric_space import EuclideanMetricSpace
from hk_infconv.space.graph_metric_space import GraphMetricSpace


def buildEuclidean(coords, name='euclidean'):
    return EuclideanMetricSpace(coords, name)


def buildGraphMetric(edges, n, name='graph'):
    return GraphMetricSpace(n, edges, name)


def buildPathGraph(n, length=1.0, name='path'):
    '''Path graph 0-1-...-(n-1) with uniform steps covering [0, length]'''
    if n < 2:
        return GraphMetricSpace(max(n, 1), [], name)
    step = float(length) / (n - 1)
    edges = [(i, i + 1, step) for i in range(n - 1)]
    return GraphMetricSpace(n, edges, name)


def fromDict(description, name=None):
    if name is None:
        name = description.get('name', None)
    backend = description.get('backend', None)
    if backend is None:
        backend = AbstractFiniteMetricSpace.GRAPH \
            if 'edges' in description else AbstractFiniteMetricSpace.EUCLIDEAN
    if backend == AbstractFiniteMetricSpace.EUCLIDEAN:
        if 'coords' not in description:
            raise MetricSpaceError("euclidean space description lacks "
                                   "'coords'")
        return EuclideanMetricSpace(description['coords'],
                                    name or 'euclidean')
    elif backend == AbstractFiniteMetricSpace.GRAPH:
        if 'n' not in description or 'edges' not in description:
            raise MetricSpaceError("graph space description needs 'n' and "
                                   "'edges'")
        return GraphMetricSpace(description['n'], description['edges'],
                                name or 'graph')
    else:
        raise MetricSpaceError('Unsupported metric space backend %s' %
                               backend)


def spaceNameFromPath(path):
    return os.path.splitext(os.path.basename(path))[0]


def load(path):
    try:
        with open(path, 'r') as f:
            description = json.load(f)
    except ValueError as e:
        raise MetricSpaceError("cannot parse space file %s: %s" %
                               (path, str(e)))
    if not isinstance(description, dict):
        raise MetricSpaceError("space file %s must hold a JSON object" % path)
    return fromDict(description, description.get('name',
                                                 spaceNameFromPath(path)))


def save(space, path):
    with open(path, 'w') as f:
        json.dump(space.toDict(), f, indent=1)
