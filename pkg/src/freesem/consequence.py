"""Semantic consequence over a finite satisfaction matrix."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InternalLawViolation, MalformedTable, Report, UnknownName


@dataclass(frozen=True)
class SatisfactionRelation:
    models: tuple
    sentences: tuple
    matrix: tuple

    def __init__(self, models: Sequence[str], sentences: Sequence[str],
                 matrix: Sequence[Sequence[bool]]):
        models, sentences = tuple(models), tuple(sentences)
        if len(set(models)) != len(models):
            raise MalformedTable("model names must be unique")
        if len(set(sentences)) != len(sentences):
            raise MalformedTable("sentence names must be unique")
        if len(matrix) != len(models):
            raise MalformedTable(f"expected {len(models)} rows, got {len(matrix)}")
        for i, row in enumerate(matrix):
            if len(row) != len(sentences):
                raise MalformedTable(f"row {i} has {len(row)} entries, expected {len(sentences)}")
        object.__setattr__(self, "models", models)
        object.__setattr__(self, "sentences", sentences)
        object.__setattr__(self, "matrix", tuple(tuple(bool(b) for b in row) for row in matrix))

    def model_index(self, name) -> int:
        try:
            return self.models.index(name)
        except ValueError:
            raise UnknownName(f"unknown model {name!r}") from None

    def sentence_index(self, name) -> int:
        try:
            return self.sentences.index(name)
        except ValueError:
            raise UnknownName(f"unknown sentence {name!r}") from None

    def satisfies(self, model, sentence) -> bool:
        return self.matrix[self.model_index(model)][self.sentence_index(sentence)]

    def _models_of(self, j: int) -> int:
        return sum(1 << i for i, row in enumerate(self.matrix) if row[j])


def theory(rel: SatisfactionRelation, model) -> frozenset:
    row = rel.matrix[rel.model_index(model)]
    return frozenset(s for s, b in zip(rel.sentences, row) if b)


def _premise_models(rel, gamma: Iterable) -> int:
    mask = (1 << len(rel.models)) - 1
    for phi in gamma:
        mask &= rel._models_of(rel.sentence_index(phi))
    return mask


def consequence(rel: SatisfactionRelation, gamma: Iterable, psi) -> bool:
    """Every model of all of ``gamma`` is a model of ``psi``."""
    premises = _premise_models(rel, gamma)
    return premises & ~rel._models_of(rel.sentence_index(psi)) == 0


def closure(rel: SatisfactionRelation, gamma: Iterable) -> frozenset:
    premises = _premise_models(rel, gamma)
    return frozenset(psi for j, psi in enumerate(rel.sentences)
                     if premises & ~rel._models_of(j) == 0)


@dataclass(frozen=True)
class KleisliPreorder:
    sentences: tuple
    relation: tuple

    def holds(self, phi, psi) -> bool:
        return self.relation[self.sentences.index(phi)][self.sentences.index(psi)]

    def pairs(self) -> list[tuple]:
        n = len(self.sentences)
        return [(self.sentences[i], self.sentences[j])
                for i in range(n) for j in range(n) if self.relation[i][j]]


def kleisli(rel: SatisfactionRelation) -> KleisliPreorder:
    """Sentences preordered by single-premise consequence."""
    n = len(rel.sentences)
    cols = [rel._models_of(j) for j in range(n)]
    relation = tuple(tuple(cols[i] & ~cols[j] == 0 for j in range(n)) for i in range(n))
    for i in range(n):
        if not relation[i][i]:
            raise InternalLawViolation(f"consequence is not reflexive at {rel.sentences[i]!r}")
        for j in range(n):
            if relation[i][j]:
                for k in range(n):
                    if relation[j][k] and not relation[i][k]:
                        raise InternalLawViolation(
                            f"consequence is not transitive at {rel.sentences[i]!r}, "
                            f"{rel.sentences[j]!r}, {rel.sentences[k]!r}")
    return KleisliPreorder(rel.sentences, relation)


def check_extension_compatibility(rel: SatisfactionRelation) -> Report:
    """A model of phi satisfies every consequence of phi."""
    rep = Report("extension_compatibility")
    order = kleisli(rel)
    for i, m in enumerate(rel.models):
        row = rel.matrix[i]
        for a, phi in enumerate(rel.sentences):
            if not row[a]:
                continue
            for b, psi in enumerate(rel.sentences):
                if order.relation[a][b] and not row[b]:
                    rep.add("incompatible", model=m, premise=phi, conclusion=psi)
    return rep
