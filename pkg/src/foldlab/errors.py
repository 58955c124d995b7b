"""Shared exception vocabulary.

Every failure mode maps to one of four categories so callers (and the CLI
exit-code table) can react uniformly:

* DomainError          -- an argument is outside an operation's stated domain
* InvalidActionError   -- a proposed symmetry fails one of the action axioms
* ResourceLimitError   -- an enumeration exceeded its configured budget
* InternalInconsistencyError -- a structural fact the theory guarantees failed
  to hold for the computed data; never silently absorbed.
"""


class FoldlabError(Exception):
    pass


class DomainError(FoldlabError, ValueError):
    pass


class InvalidActionError(FoldlabError, ValueError):
    pass


class ResourceLimitError(FoldlabError, RuntimeError):
    pass


class InternalInconsistencyError(FoldlabError, RuntimeError):
    pass
