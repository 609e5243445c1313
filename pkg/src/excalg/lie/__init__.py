"""Graded Lie algebras and the constructions built from Jordan and structurable algebras."""
from .algebra import GradedLieAlgebra, Builder
from .constructions import heisenberg, koecher, allison, ConstructionError
from .analysis import (EmbeddingError, LieEmbedding, Subalgebra, antisymmetry_check, centralizer,
                       derivation_algebra, derived_and_center, grading_check, induced_embedding,
                       jacobi_check, killing, killing_checks, whole)
