"""
Stage pipelines built on toolz composition.
"""

from .pipeline import Pipeline, Stage, stage_name

__all__ = ["Pipeline", "Stage", "stage_name"]
