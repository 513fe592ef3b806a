import json
import os
from hk_infconv.measure.discrete_measure import DiscreteMeasure, MeasureError


def _sameSpaceReference(reference, space):
    if reference is None:
        return True
    referenceName = os.path.splitext(os.path.basename(str(reference)))[0]
    return referenceName == space.name() or str(reference) == space.name()


def fromDict(description, space):
    if not isinstance(description, dict) or 'atoms' not in description:
        raise MeasureError("measure description needs an 'atoms' list")
    reference = description.get('space', None)
    if not _sameSpaceReference(reference, space):
        raise MeasureError("measure refers to space '%s' but space '%s' "
                           "was given" % (reference, space.name()))
    return DiscreteMeasure(space, description['atoms'])


def load(path, space):
    try:
        with open(path, 'r') as f:
            description = json.load(f)
    except ValueError as e:
        raise MeasureError("cannot parse measure file %s: %s" %
                           (path, str(e)))
    return fromDict(description, space)


def save(measure, path, spaceName=None):
    with open(path, 'w') as f:
        json.dump(measure.toDict(spaceName), f)
