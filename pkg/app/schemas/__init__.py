from app.schemas.session import ActionSpec, AlgebraSpec, Backend, GroupSpec, PointedSpec, Scope, SessionSpec
from app.schemas.report import CheckEntry, Report

__all__ = [
    "SessionSpec",
    "GroupSpec",
    "ActionSpec",
    "PointedSpec",
    "AlgebraSpec",
    "Backend",
    "Scope",
    "Report",
    "CheckEntry",
]
