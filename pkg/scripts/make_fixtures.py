"""Regenerate the bundled fixtures in src/gck/fixtures in canonical form."""
from __future__ import annotations

import json
from pathlib import Path

from gck.courant import GeneralizedStructure
from gck.fileformat import StructureFile, print_structure_file
from gck.hitchin import HitchinPair, hitchin_to_gcs
from gck.tensorfield import Bivector, Chart, EndoField, KForm, PolyMap

OUT = Path(__file__).resolve().parents[1] / "src" / "gck" / "fixtures"


def plane() -> tuple[Chart, KForm, EndoField]:
    R2 = Chart(("x", "y"))
    omega = KForm(R2, 2, {(0, 1): 1})
    J = EndoField(R2, [[R2.const(0), R2.const(-1)], [R2.const(1), R2.const(0)]])
    return R2, omega, J


def symplectic_r2() -> StructureFile:
    R2, omega, _ = plane()
    sf = StructureFile()
    sf.add_chart("R2", R2)
    pair = HitchinPair(omega, EndoField(R2, [[R2.const(0)] * 2 for _ in range(2)]))
    sf.add_gcs("symplectic", hitchin_to_gcs(pair))
    sf.add_hitchin("pair", pair, prefix="pair_")
    return sf


def broken_sigma() -> StructureFile:
    sf = symplectic_r2()
    R2 = sf.charts["R2"]
    sf.tensors["sigma"] = sf.tensors["sigma"] + KForm(R2, 2, {(0, 1): R2.poly("x")})
    del sf.structures["pair"]
    del sf.tensors["pair_omega"], sf.tensors["pair_a"]
    return sf


def hitchin_id_r2() -> StructureFile:
    R2, omega, _ = plane()
    sf = StructureFile()
    sf.add_chart("R2", R2)
    sf.add_hitchin("pair", HitchinPair(omega, EndoField.identity(R2)))
    return sf


def complex_r2() -> StructureFile:
    R2, omega, J = plane()
    sf = StructureFile()
    sf.add_chart("R2", R2)
    sf.add_gcs("complex", GeneralizedStructure(J, Bivector.zero(R2), KForm.zero(R2, 2)))
    sf.add_hitchin("kahler", HitchinPair(omega, J), prefix="kahler_")
    return sf


def holomorphic_symplectic_r4() -> StructureFile:
    """Real part of dz1^dz2 with the standard complex structure on C^2."""
    R4, J4 = complex_plane_pair()
    sf = StructureFile()
    sf.add_chart("R4", R4)
    sf.add_hitchin("sc", HitchinPair(KForm(R4, 2, {(0, 2): 1, (1, 3): -1}), J4))
    return sf


def complex_plane_pair() -> tuple[Chart, EndoField]:
    R4 = Chart(("u", "v", "w", "z"))
    z4 = R4.const(0)
    one = R4.const(1)
    return R4, EndoField(R4, [[z4, -one, z4, z4], [one, z4, z4, z4], [z4, z4, z4, -one], [z4, z4, one, z4]])


def maps_r4() -> StructureFile:
    """The projection C^2 -> C is holomorphic; complex conjugation on C is not."""
    R2, _, J = plane()
    R4, J4 = complex_plane_pair()
    sf = StructureFile()
    sf.add_chart("R2", R2)
    sf.add_chart("R4", R4)
    sf.add_gcs("complex2", GeneralizedStructure(J4, Bivector.zero(R4), KForm.zero(R4, 2)), prefix="c2_")
    sf.add_gcs("complex1", GeneralizedStructure(J, Bivector.zero(R2), KForm.zero(R2, 2)), prefix="c1_")
    sf.tensors["projection"] = PolyMap(R4, R2, (R4.coord(0), R4.coord(1)))
    sf.tensors["conjugation"] = PolyMap(R2, R2, (R2.coord(0), -R2.coord(1)))
    sf.structures["project"] = {"kind": "morphism", "map": "projection", "source": "complex2", "target": "complex1"}
    sf.structures["conjugate"] = {"kind": "morphism", "map": "conjugation", "source": "complex1",
                                  "target": "complex1"}
    return sf


def missing_tensor() -> str:
    doc = json.loads(print_structure_file(symplectic_r2()))
    doc["structures"]["symplectic"]["sigma"] = "tau"
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def malformed() -> str:
    doc = json.loads(print_structure_file(symplectic_r2()))
    doc["tensors"]["sigma"]["components"] = {"x,q": "-1"}
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    builders = {"symplectic_r2": symplectic_r2, "broken_sigma": broken_sigma, "hitchin_id_r2": hitchin_id_r2,
                "complex_r2": complex_r2, "maps_r4": maps_r4,
                "holomorphic_symplectic_r4": holomorphic_symplectic_r4}
    for name, build in builders.items():
        (OUT / f"{name}.json").write_text(print_structure_file(build()))
    (OUT / "missing_tensor.json").write_text(missing_tensor())
    (OUT / "malformed.json").write_text(malformed())
    for p in sorted(OUT.glob("*.json")):
        print(p.name)


if __name__ == "__main__":
    main()
