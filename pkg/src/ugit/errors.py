"""Exception hierarchy.

Every domain failure raised by the library derives from :class:`UgitError`;
the CLI maps these to exit code 1 and a machine-readable error object.
"""


class UgitError(Exception):
    """Base class for domain errors."""

    kind = "UgitError"

    def __init__(self, message="", **details):
        super().__init__(message)
        self.details = details

    def to_dict(self):
        out = {"kind": self.kind, "message": str(self)}
        if self.details:
            out["details"] = self.details
        return out


def _make(name, doc):
    cls = type(name, (UgitError,), {"kind": name, "__doc__": doc})
    return cls


NotNilpotent = _make("NotNilpotent", "Matrix power n**dim is nonzero.")
EpsSquared = _make("EpsSquared", "A product would produce an eps**2 term.")
InvalidRep = _make("InvalidRep", "Representation fails validation.")
TrivialAction = _make("TrivialAction", "Only one distinct torus weight.")
NotAdapted = _make("NotAdapted", "chi/c lies outside the open adapted interval.")
UnsupportedDimension = _make("UnsupportedDimension", "Operation needs dim U = 1.")
SsNeqS = _make("SsNeqS", "The semistable = stable condition fails.")
MissingStructureConsts = _make("MissingStructureConsts", "Lie brackets are required.")
NParamTooSmall = _make("NParamTooSmall", "N must exceed max(a_i - 2*omega_0).")
BadSectionWeight = _make("BadSectionWeight", "sigma is not a minimal-weight form.")
MonomialCapExceeded = _make("MonomialCapExceeded", "Too many monomials.")
ShapeMismatch = _make("ShapeMismatch", "Block shapes are inconsistent.")
UnboundedDegree = _make("UnboundedDegree", "Monomial enumeration does not terminate.")
SchemaError = _make("SchemaError", "Input document fails schema validation.")
