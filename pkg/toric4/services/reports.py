"""Report builders shared by the CLI and the HTTP endpoints.

Every builder returns a plain dict whose key order is the output order;
rationals are rendered as "p/q" strings.
"""
import json
from typing import Optional, Sequence

from loguru import logger
from sympy import Integer, Matrix, Rational

from toric4.core.exceptions import LabelingMismatch, NotNormalized
from toric4.models.morphism import Lifting
from toric4.models.pair import CharacteristicPair, NormalizedPair
from toric4.models.ring import RingSpec
from toric4.schemas.morphism import MorphismDocument
from toric4.services import charpair, cohomology, morphisms, srengine


def jsonable(value):
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, (int, Integer)):
        return int(value)
    if isinstance(value, Rational):
        return str(value)
    if isinstance(value, Matrix):
        return srengine.to_rows(value)
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    return value


def to_json(report: dict) -> str:
    return json.dumps(jsonable(report), indent=2)


def normalization_dict(np: NormalizedPair) -> dict:
    return {
        "flavor": np.flavor,
        "rotation": np.rotation,
        "basis_change": np.basis_change.to_list(),
        "shear": np.shear,
        "edges": np.pair.edges(),
    }


def validate_report(edges: Sequence, degenerate: bool = False) -> tuple[dict, bool]:
    """Returns the report and whether the input was valid."""
    result = charpair.validate_degenerate(edges) if degenerate else charpair.validate(edges)
    if isinstance(result, list):
        return {"valid": False, "violations": [v.to_dict() for v in result]}, False
    if degenerate:
        return {"valid": True, "degenerate": True, "characteristic": charpair.is_characteristic(result)}, True
    return {
        "valid": True,
        "smooth_pairs": charpair.smooth_edge_pairs(result),
        "k": charpair.torsion_order(result),
    }, True


def groups_report(pair: CharacteristicPair, ring: RingSpec) -> dict:
    groups = cohomology.groups_over_R(pair, ring)
    report = {"ring": ring.label, "k": charpair.torsion_order(pair)}
    report.update(degrees=groups.to_dict()["degrees"])
    return report


def normalize_report(
    pair: CharacteristicPair, flavor: str = "auto", index: Optional[int] = None, shear: Optional[int] = None
) -> dict:
    if flavor == "auto":
        flavor = "smooth" if charpair.smooth_edge_pairs(pair) else "half"
    if flavor == "smooth":
        np = charpair.normalize_smooth(pair, index)
    else:
        np = charpair.normalize_half(pair, index, shear)
    return normalization_dict(np)


def choose_theorem(pair: CharacteristicPair, ring: RingSpec) -> str:
    if charpair.smooth_edge_pairs(pair):
        return "smooth"
    if pair.m == 3 and ring.kind == "Z":
        return "triangle"
    return "pid"


def cup_report(pair: CharacteristicPair, ring: RingSpec, theorem: str = "auto", index: Optional[int] = None) -> dict:
    """
    Cup-product report for one of the three closed forms.

    ``auto`` picks the smooth formula when a smooth vertex exists, the
    triangle formula for triangles over Z and the PID formula otherwise.
    """
    if theorem == "auto":
        theorem = choose_theorem(pair, ring)
    logger.info(f"cup: {theorem} formula over {ring.label}")

    if theorem == "smooth":
        np = charpair.normalize_smooth(pair, index)
        report = cohomology.cup_matrix_smooth(np, ring).to_dict()
        report["normalization"] = normalization_dict(np)
        return report

    np = charpair.normalize_half(pair, index)
    if theorem == "triangle":
        if pair.m != 3:
            raise NotNormalized(f"the triangle formula needs 3 edges, got {pair.m}")
        return cohomology.cup_triangle(np).to_dict()

    report = cohomology.cup_matrix_pid(np, ring).to_dict()
    report["k"] = charpair.torsion_order(np.pair)
    report["normalization"] = normalization_dict(np)
    return report


def _smooth_oracle(np: NormalizedPair) -> dict:
    formula = cohomology.cup_matrix_smooth(np, cohomology.RATIONALS).as_matrix()
    oracle = srengine.oracle_cup_matrix_smooth(np)
    return {
        "mode": "smooth",
        "edges": np.pair.edges(),
        "formula": srengine.to_rows(formula),
        "oracle": srengine.to_rows(oracle),
        "agree": formula == oracle,
    }


def _pid_oracle(np: NormalizedPair) -> dict:
    pair = np.pair
    M = cohomology.cup_matrix_pid(np, cohomology.RATIONALS).as_matrix()
    G, basis = srengine.gram_matrix_natural(pair)
    scale = srengine.fundamental_scale(pair)
    scaled = G / scale
    agree = srengine.congruent_up_to_sign(M, scaled)
    companion, g = cohomology.smooth_companion(np)
    report = {
        "mode": "pid",
        "edges": pair.edges(),
        "k": charpair.torsion_order(pair),
        "cup_pid": srengine.to_rows(M),
        "gram_natural": srengine.to_rows(G),
        "gram_basis": basis,
        "fundamental_scale": scale,
        "invariants": {
            "cup_pid": srengine.congruence_invariants(M).to_dict(),
            "gram": srengine.congruence_invariants(scaled).to_dict(),
        },
        "companion": {"edges": companion.pair.edges(), "g": g},
    }
    if pair.m == 3:
        triangle = cohomology.cup_triangle(np)
        ratio = srengine.square_law_ratio(triangle.c, pair)
        square = srengine.is_square_up_to_sign(ratio)
        report["triangle"] = {"c": triangle.c, "k": triangle.k, "square_law_ratio": str(ratio), "square": square}
        agree = agree and square
    report["agree"] = agree
    return report


def oracle_report(pair: CharacteristicPair, index: Optional[int] = None) -> dict:
    """
    Cross-check a closed-form cup matrix against the rational Stanley-Reisner quotient.

    Smooth pairs whose a_i b_i are all nonzero are compared entry by entry;
    every other pair is brought to half form and compared through congruence
    invariants against the natural Gram matrix.
    """
    if charpair.smooth_edge_pairs(pair):
        np = charpair.normalize_smooth(pair, index)
        if all(np.pair.vector(i).a * np.pair.vector(i).b != 0 for i in range(1, pair.n + 1)):
            report = _smooth_oracle(np)
            if not report["agree"]:
                logger.warning(f"oracle disagrees with the smooth formula on {pair.edges()}")
            return report
        index = None
    report = _pid_oracle(charpair.normalize_half(pair, index))
    if not report["agree"]:
        logger.warning(f"oracle disagrees with the PID formula on {pair.edges()}")
    return report


def _lifting_dict(cp, lifting: Lifting) -> dict:
    sub = morphisms.induced_substitution(lifting)
    return {
        "lifting": lifting.to_rows(),
        "integral": lifting.integral,
        "substitution": {
            f"x{k}": morphisms.substitute_generator(sub, k).to_list() for k in range(1, cp.target.m + 1)
        },
    }


def lift_report(pair: CharacteristicPair, doc: MorphismDocument) -> dict:
    cp = morphisms.morphism_from_document(pair, doc)
    result = morphisms.solve_lifting(cp)
    if isinstance(result, Lifting):
        report = _lifting_dict(cp, result)
    else:
        report = result.to_dict()
        rational = morphisms.solve_rational_lifting(cp)
        report["rational_lifting"] = rational.to_rows()
    report["target"] = {"edges": cp.target.edges()}
    return report


def morph_report(pair, docs: Sequence[MorphismDocument]) -> dict:
    """Apply morphisms in order; report each step and the composite lifting when every step lifts."""
    steps = []
    current = pair
    composite = None
    lifts = True
    for doc in docs:
        cp = morphisms.morphism_from_document(current, doc)
        compatibility = morphisms.validate_compatible(cp)
        characteristic = charpair.is_characteristic(cp.target)
        step = {
            "type": doc.type,
            "edge_map": cp.edge_map.to_dict(),
            "psi": cp.psi.to_list(),
            "target": {"edges": cp.target.edges()},
            "characteristic": characteristic,
        }
        step.update(compatibility.to_dict())
        try:
            step["cellular_index_map"] = morphisms.cellular_index_map(cp.edge_map).to_dict()
        except LabelingMismatch as exc:
            step["cellular_index_map"] = None
            step["labeling"] = exc.message

        solvable = (
            compatibility.compatible
            and characteristic
            and charpair.is_characteristic(cp.source)
            and doc.type != "bend"
        )
        if solvable:
            result = morphisms.solve_lifting(cp)
            if isinstance(result, Lifting):
                step["lifting"] = result.to_rows()
                sub = morphisms.induced_substitution(result)
                composite = sub if composite is None else morphisms.compose_substitutions(sub, composite)
            else:
                step.update(result.to_dict())
                lifts = False
        else:
            step["lifting"] = None
            step["reason"] = "no lifting solver for this step"
            lifts = False
        steps.append(step)
        current = cp.target

    composite_rows = srengine.to_rows(composite.matrix) if lifts and composite is not None else None
    return {
        "source": {"edges": pair.edges()},
        "steps": steps,
        "result": {"edges": current.edges(), "characteristic": charpair.is_characteristic(current)},
        "composite_lifting": composite_rows,
    }


def _scalar(value) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, list):
        return json.dumps(value)
    return str(value)


def _is_matrix(value) -> bool:
    return isinstance(value, list) and bool(value) and all(isinstance(row, list) for row in value) \
        and all(not isinstance(x, (list, dict)) for row in value for x in row)


def _matrix_lines(rows: list, indent: int) -> list[str]:
    cells = [[_scalar(x) for x in row] for row in rows]
    width = max((len(c) for row in cells for c in row), default=1)
    return [" " * indent + "  ".join(c.rjust(width) for c in row) for row in cells]


def render_text(report: dict, indent: int = 0) -> str:
    """Aligned plain-text rendering of a report."""
    report = jsonable(report)
    pad = " " * indent
    width = max((len(key) for key in report), default=0)
    lines = []
    for key, value in report.items():
        if isinstance(value, dict) and value.get("mod") is not None and "entries" in value:
            lines.append(f"{pad}{key}: (mod {value['mod']})")
            lines.extend(_matrix_lines(value["entries"], indent + 2))
        elif isinstance(value, dict):
            lines.append(f"{pad}{key}:")
            lines.append(render_text(value, indent + 2))
        elif _is_matrix(value):
            lines.append(f"{pad}{key}:")
            lines.extend(_matrix_lines(value, indent + 2))
        elif isinstance(value, list) and value and all(isinstance(item, dict) for item in value):
            lines.append(f"{pad}{key}:")
            for number, item in enumerate(value, start=1):
                lines.append(f"{pad}  [{number}]")
                lines.append(render_text(item, indent + 4))
        else:
            lines.append(f"{pad}{key.ljust(width)}  {_scalar(value)}")
    return "\n".join(line for line in lines if line)
