"""Exception hierarchy.

Every domain failure raised by the library derives from :class:`BispankitError`;
the CLI maps these to exit status 1.
"""


class BispankitError(Exception):
    pass


# groups
class GroupError(BispankitError):
    pass


class NotAssociative(GroupError):
    def __init__(self, triple):
        self.triple = triple
        super().__init__("multiplication is not associative on %r" % (triple,))


class NoUnit(GroupError):
    def __init__(self, element):
        self.element = element
        super().__init__("element %r is not a two-sided unit" % (element,))


class NoInverse(GroupError):
    def __init__(self, element):
        self.element = element
        super().__init__("element %r has no two-sided inverse" % (element,))


class NotABijection(GroupError):
    def __init__(self, perm):
        self.perm = perm
        super().__init__("generator %r is not a bijection" % (perm,))


class GroupTooLarge(GroupError):
    def __init__(self, order, bound):
        self.order, self.bound = order, bound
        super().__init__("group of order %d exceeds the bound %d" % (order, bound))


class NotASubgroup(GroupError):
    pass


# G-sets
class GSetError(BispankitError):
    pass


class GroupMismatch(GSetError):
    pass


class TargetMismatch(GSetError):
    pass


class CompositionMismatch(GSetError):
    pass


class NotEquivariant(GSetError):
    pass


class InvalidAction(GSetError):
    pass


class OutputTooLarge(GSetError):
    def __init__(self, size, bound):
        self.size, self.bound = size, bound
        super().__init__("construction would have %d points (bound %d)" % (size, bound))


# spans and bispans
class NotComposable(BispankitError):
    pass


class EndpointMismatch(BispankitError):
    pass


class ForwardLegNotAdmissible(BispankitError):
    pass


class AdmissibilityViolated(BispankitError):
    def __init__(self, leg, pair):
        self.leg, self.pair = leg, pair
        super().__init__("leg %s is not admissible: orbit map G/%s -> G/%s" % (leg, pair[1], pair[0]))


class InvalidDescriptor(BispankitError):
    pass


# tambara
class CarrierMismatch(BispankitError):
    pass


class InvalidModel(BispankitError):
    pass


# wreath
class BadRepresentatives(BispankitError):
    pass


class NoIsoFound(BispankitError):
    pass
