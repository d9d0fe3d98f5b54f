from contextlib import contextmanager


class GrowthLabError(Exception):
    """Base error for every failure the pipeline reports"""
    exit_code = 1
    kind = 'error'

    def __init__(self, message, stage=None):
        super().__init__(message)
        self.message = message
        self.stage = stage

    def with_stage(self, stage):
        """Tag the error with the pipeline stage that raised it"""
        if self.stage is None:
            self.stage = stage
        return self

    def as_dict(self):
        """Return the JSON error object written by the commands"""
        payload = {
            'type': self.kind,
            'message': self.message,
            'exit_code': self.exit_code,
        }
        if self.stage:
            payload['stage'] = self.stage
        return payload


class InputError(GrowthLabError, ValueError):
    """Malformed or mathematically invalid input"""
    exit_code = 2
    kind = 'input-error'


class DomainError(InputError):
    """Argument outside the domain of a function, e.g. ln of a negative"""
    kind = 'domain-error'


class OrbitIntegralityError(InputError):
    """P maps an orbit term to a non-integer"""
    kind = 'orbit-integrality'

    def __init__(self, message, index, stage=None):
        super().__init__(message, stage=stage)
        self.index = index

    def as_dict(self):
        payload = super().as_dict()
        payload['index'] = self.index
        return payload


class DivergenceNotEstablished(InputError):
    """The orbit was not shown to escape to infinity"""
    kind = 'divergence-not-established'


class MultiplicativeDependence(InputError):
    """A certified multiplicative relation among the given bases"""
    kind = 'multiplicative-dependence'

    def __init__(self, message, relation, stage=None):
        super().__init__(message, stage=stage)
        self.relation = list(relation)

    def as_dict(self):
        payload = super().as_dict()
        payload['relation'] = self.relation
        return payload


class PrecisionInsufficient(GrowthLabError):
    """The working precision cannot settle the requested question"""
    exit_code = 3
    kind = 'precision-insufficient'


class UnsupportedError(GrowthLabError):
    """A configured cap was exceeded"""
    exit_code = 4
    kind = 'unsupported'


@contextmanager
def staged(name):
    """Tag GrowthLabErrors raised in the block with a stage name"""
    try:
        yield
    except GrowthLabError as exc:
        raise exc.with_stage(name)
