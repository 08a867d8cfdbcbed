"""Exception types shared across the package."""


class Sp21Error(Exception):
    """Base class for all sp21kit errors."""


class DivisionByNearZero(Sp21Error):
    pass


class NonRealSelfInner(Sp21Error):
    pass


class AtInfinity(Sp21Error):
    pass


class NotSymplectic(Sp21Error):
    pass


class IllConditioned(Sp21Error):
    pass


class DegenerateDraw(Sp21Error):
    pass


class NotDiagonal(Sp21Error):
    pass


class NotLoxodromic(Sp21Error):
    pass


class ConstraintViolated(Sp21Error):
    pass


class CapExceeded(Sp21Error):
    pass


class ZeroInput(Sp21Error):
    pass


class SingularSystem(Sp21Error):
    pass


class NonComplexTraces(Sp21Error):
    pass


class StructureMismatch(Sp21Error):
    def __init__(self, relation, residual=None):
        self.relation = relation
        self.residual = residual
        msg = f"structure relation violated: {relation}"
        if residual is not None:
            msg += f" (residual {residual:.3e})"
        super().__init__(msg)


class ReductionFailed(Sp21Error):
    def __init__(self, identity, residual=None):
        self.identity = identity
        self.residual = residual
        msg = f"sparse reduction failed, identity {identity} violated"
        if residual is not None:
            msg += f" (residual {residual:.3e})"
        super().__init__(msg)


class InfeasibleSpec(Sp21Error):
    pass


class GroupFileError(Sp21Error):
    pass
