"""Exception hierarchy shared by every module.

Domain errors carry a ``code`` that the CLI reports in its error JSON.
"""

from __future__ import annotations


class EqchromError(Exception):
    code = "DomainError"

    def __init__(self, message: str = "", **details):
        super().__init__(message)
        self.details = details

    def to_json(self) -> dict:
        out = {"error": self.code, "message": str(self)}
        if self.details:
            out["details"] = {k: _jsonable(v) for k, v in self.details.items()}
        return out


def _jsonable(v):
    if isinstance(v, (str, int, float, bool)) or v is None:
        return v
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return str(v)


def _make(name: str, doc: str, base=EqchromError):
    cls = type(name, (base,), {"__doc__": doc, "code": name})
    return cls


# group_lattice
GroupTooLarge = _make("GroupTooLarge", "Group order exceeds the configured enumeration bound.")
NotASubgroup = _make("NotASubgroup", "Subgroup relation required by the operation does not hold.")
InvalidGroupSpec = _make("InvalidGroupSpec", "Malformed p-group specification.")

# balmer_spec
NotDownwardClosed = _make("NotDownwardClosed", "Explicit subgroup set is not a family.")
SNotInFiniteDomain = _make("SNotInFiniteDomain", "S must lie in the finite domain of the type function.")
PreconditionViolated = _make("PreconditionViolated", "A stated precondition does not hold.")
NotAdmissible = _make("NotAdmissible", "Height or type function is not admissible.")
TooLarge = _make("TooLarge", "Enumeration request exceeds supported bounds.")

# series_core
NegativePowerOfNonUnit = _make("NegativePowerOfNonUnit", "Negative power of a non-invertible element.")
NonzeroConstantTerm = _make("NonzeroConstantTerm", "Inner series of a composition must vanish at 0.")
NonunitLinearTerm = _make("NonunitLinearTerm", "Series reversion needs an invertible linear coefficient.")
MissingGenerator = _make("MissingGenerator", "Ring lacks a generator the operation needs.")
UnsupportedRingKind = _make("UnsupportedRingKind", "Operation is not supported for this kind of ring.")
NotPLocal = _make("NotPLocal", "Coefficient has a denominator divisible by p.")
RingMismatch = _make("RingMismatch", "Operands live in incompatible rings.")
ParseError = _make("ParseError", "Could not parse an element expression.")

# fgl_engine
BadLogLinearTerm = _make("BadLogLinearTerm", "Logarithm must be x + O(x^2).")
ConventionSelfTestFailed = _make("ConventionSelfTestFailed", "p-typical law failed its defining identity.")
CongruenceFails = _make("CongruenceFails", "p-series congruence pattern does not hold.")
NotOverPrimeField = _make("NotOverPrimeField", "Coefficients are not specialised into F_p.")

# isotropy_diagram
CertificateNotFound = _make("CertificateNotFound", "No relation certificate found within precision caps.")
PrecisionTooLow = _make("PrecisionTooLow", "Requested precision is too low for the computation.")

# cli
SchemaViolation = _make("SchemaViolation", "Input document does not match its schema.")
