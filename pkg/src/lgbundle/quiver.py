"""The quiver Q_s(a_0, ..., a_r) on the exceptional collection.

Vertices are the E_kl; there is one arrow p -> act(g, p) tagged g for each
generator divisor g = V(v_i) or V(e_j) lying in Div^+(p).  Relations are the
commutation squares g1 g2 = g2 g1 whose both composite paths exist.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .bundle import BundleSpec, PicClass, ToricDivisor, collection_labels, generators
from .monodromy import act, act_unreduced

Label = tuple[int, int]

FAMILY_COLORS = ("black", "red", "green")


@dataclass(frozen=True)
class Arrow:
    src: Label
    dst: Label
    gen: str


@dataclass(frozen=True)
class Relation:
    src: Label
    g1: str
    g2: str


@dataclass(frozen=True)
class Quiver:
    spec: BundleSpec
    vertices: tuple[tuple[Label, PicClass], ...]
    arrows: tuple[Arrow, ...]
    relations: tuple[Relation, ...]

    @property
    def name(self) -> str:
        return "Q_%d(%s)" % (self.spec.s, ",".join(map(str, self.spec.a_full)))

    def arrows_by_family(self) -> dict[str, int]:
        out: dict[str, int] = {"v": 0}
        out.update({f"e{j}": 0 for j in range(self.spec.r + 1)})
        for arr in self.arrows:
            out["v" if arr.gen.startswith("v") else arr.gen] += 1
        return out

    def arrows_between(self, p: Label, q: Label) -> list[Arrow]:
        return [x for x in self.arrows if x.src == p and x.dst == q]


def _in_box(spec: BundleSpec, p: Label) -> bool:
    return 0 <= p[0] <= spec.s and 0 <= p[1] <= spec.r


def _step(spec: BundleSpec, g: str, p: Label) -> Label | None:
    q = act_unreduced(spec, ToricDivisor.generator(spec, g), p)
    return q if _in_box(spec, q) else None


def build_quiver(spec: BundleSpec) -> Quiver:
    labels = collection_labels(spec)
    gens = generators(spec)
    vertices = tuple((p, PicClass(*p)) for p in labels)
    arrows = []
    relations = []
    for p in labels:
        for g in gens:
            q = _step(spec, g, p)
            if q is not None:
                arrows.append(Arrow(p, q, g))
        for i, g1 in enumerate(gens):
            for g2 in gens[i + 1:]:
                a, b = _step(spec, g1, p), _step(spec, g2, p)
                if a is None or b is None:
                    continue
                if _step(spec, g2, a) is not None and _step(spec, g1, b) is not None:
                    relations.append(Relation(p, g1, g2))
    return Quiver(spec, vertices, tuple(arrows), tuple(relations))


def generator_color(g: str) -> str:
    if g.startswith("v"):
        return "blue"
    return FAMILY_COLORS[int(g[1:]) % len(FAMILY_COLORS)]


def _node(p: Label) -> str:
    return f"E_{p[0]}_{p[1]}"


def emit_dot(q: Quiver) -> str:
    lines = [f'digraph "{q.name}" {{', "  rankdir=LR;", "  node [shape=plaintext];"]
    for p, pic in q.vertices:
        lines.append(f'  {_node(p)} [label="E_{p[0]}{p[1]} ({pic.h},{pic.x})"];')
    for a in q.arrows:
        lines.append(f'  {_node(a.src)} -> {_node(a.dst)} '
                     f'[label="{a.gen}", color={generator_color(a.gen)}];')
    for rel in q.relations:
        lines.append(f"  // relation at {_node(rel.src)}: {rel.g1}*{rel.g2} = {rel.g2}*{rel.g1}")
    lines.append("}")
    return "\n".join(lines) + "\n"


def quiver_to_dict(q: Quiver) -> dict:
    return {
        "name": q.name,
        "s": q.spec.s,
        "a": list(q.spec.a),
        "vertices": [{"k": p[0], "l": p[1], "h": pic.h, "x": pic.x} for p, pic in q.vertices],
        "arrows": [{"src": list(a.src), "dst": list(a.dst), "gen": a.gen} for a in q.arrows],
        "relations": [{"src": list(r.src), "g1": r.g1, "g2": r.g2} for r in q.relations],
    }


def emit_json(q: Quiver) -> str:
    return json.dumps(quiver_to_dict(q), indent=2) + "\n"


def quiver_from_json(text: str) -> Quiver:
    d = json.loads(text)
    spec = BundleSpec(d["s"], tuple(d["a"]))
    vertices = tuple(((v["k"], v["l"]), PicClass(v["h"], v["x"])) for v in d["vertices"])
    arrows = tuple(Arrow(tuple(a["src"]), tuple(a["dst"]), a["gen"]) for a in d["arrows"])
    relations = tuple(Relation(tuple(r["src"]), r["g1"], r["g2"]) for r in d["relations"])
    return Quiver(spec, vertices, arrows, relations)


def relation_closes(q: Quiver, rel: Relation) -> bool:
    D1 = ToricDivisor.generator(q.spec, rel.g1)
    D2 = ToricDivisor.generator(q.spec, rel.g2)
    return act(q.spec, D1, act(q.spec, D2, rel.src)) == act(q.spec, D2, act(q.spec, D1, rel.src))
