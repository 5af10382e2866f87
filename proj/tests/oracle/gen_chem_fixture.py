#!/usr/bin/env python3
# Copyright 2026 The GCI Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Freezes RDKit reference answers for the curated molecule list.

Run once with RDKit installed; the output TSV is checked in and consumed by
the C++ tests. Nothing in the C++ build depends on RDKit.

    python3 tests/oracle/gen_chem_fixture.py > tests/fixtures/chem_oracle.tsv
"""
import sys

from rdkit import Chem

MOLECULES = [
    "C", "CC", "CCO", "CO", "OCCO", "CC(C)O", "CC(=O)C", "CC=O", "CC(=O)O",
    "OC(=O)CC(=O)O", "CCC(=O)CC", "O=C1CCCCC1", "CC(=O)OC", "CC(=O)N",
    "c1ccccc1", "Cc1ccccc1", "Oc1ccccc1", "OC(=O)c1ccccc1", "CC(=O)c1ccccc1",
    "O=C(c1ccccc1)c1ccccc1", "c1ccncc1", "c1ccoc1", "c1ccsc1", "c1cc[nH]c1",
    "c1ccc2ccccc2c1", "c1ccc2[nH]ccc2c1", "C1CCCCC1", "C1=CCCCC1", "C1CC1",
    "C1CCC1", "ClCCl", "ClC(Cl)(Cl)Cl", "Clc1ccccc1", "FC(F)(F)c1ccccc1",
    "Fc1ccc(F)cc1", "CCF", "BrCCBr", "ICC", "CC(=O)Oc1ccccc1C(=O)O",
    "CN1C=NC2=C1C(=O)N(C(=O)N2C)C", "Cn1cnc2c1c(=O)n(C)c(=O)n2C",
    "CC(C)Cc1ccc(cc1)C(C)C(=O)O", "CC(=O)Nc1ccc(O)cc1",
    "CN1CCC[C@H]1c1cccnc1", "OC[C@H]1OC(O)[C@H](O)[C@@H](O)[C@@H]1O",
    "CN(C)CCCN1c2ccccc2CCc2ccc(Cl)cc21", "Clc1ccc2c(c1)C(=NCC(=O)N2C)c1ccccc1",
    "CN1C(=O)CN=C(c2ccccc2)c2cc(Cl)ccc21", "OC(=O)C(F)(F)F",
    "CCN(CC)CC", "C[N+](C)(C)C", "[NH4+]", "CC(=O)[O-]", "[O-]C(=O)CC",
    "NCC(=O)O", "N[C@@H](Cc1ccccc1)C(=O)O", "c1ccc2c(c1)oc1ccccc12",
    "O=C1CC(=O)C1", "CC(C)(C)c1ccc(O)cc1", "O=C(O)CCc1ccccc1",
    "FC(F)Oc1ccc(cc1)C(=O)C", "c1ccc(cc1)-c1ccccc1", "C1CCC2CCCCC2C1",
    "c1ccc2cc3ccccc3cc2c1", "C1=CC=CC=C1", "OCC(O)CO", "CS(=O)(=O)C",
    "CSC", "CP(=O)(O)O", "B(O)(O)c1ccccc1", "CC#N", "C#C", "C=C",
    "Clc1ccc(cc1)C(c1ccc(Cl)cc1)C(Cl)(Cl)Cl", "c1cscn1", "c1cnc[nH]1",
    "O=c1cc[nH]cc1", "CC(=O)CC(=O)C", "O=CC(=O)C", "CCOC(=O)C(C)C",
    "OC1CCCCC1", "O=C(C1CC1)C1CC1", "[2H]OC", "C[C@@H](O)c1ccccc1",
    "C/C=C/C(=O)C", "c1ccc2ncccc2c1", "OC(=O)c1ccccc1O",
    "Cc1ccccc1.Cl", "[Na+].[Cl-]", "CC(C)N.Cl",
]

GROUPS = {
    # oxygen with one heavy neighbour (a carbon, single bond) and >= 1 H
    "hydroxyl": ["[O;D1;!H0]-[#6]"],
    # carbon with a terminal =O and exactly two other heavy neighbours, both carbons
    "ketone": ["[#6;D3](=[O;D1])(~[#6])~[#6]"],
    # any simple 6-cycle of aromatic carbons
    "phenyl": ["c1~c~c~c~c~c~1"],
    "chlorine": ["[Cl]"],
    "fluorine": ["[F]"],
    # carbon with a terminal =O and a single-bonded terminal O carrying H
    "carboxyl": ["[#6](=[O;D1])-[O;D1;!H0]"],
    # any simple cycle of length 3..7 made only of aromatic atoms
    "aromatic_ring": [
        "a1~a~a~1", "a1~a~a~a~1", "a1~a~a~a~a~1", "a1~a~a~a~a~a~1",
        "a1~a~a~a~a~a~a~1",
    ],
}
GROUP_ORDER = ["hydroxyl", "ketone", "phenyl", "chlorine", "fluorine",
               "carboxyl", "aromatic_ring"]

PATTERNS = {g: [Chem.MolFromSmarts(s) for s in v] for g, v in GROUPS.items()}


def notation_aromatic(smiles):
    """Indices of atoms written in aromatic (lowercase) form, in parse order."""
    mol = Chem.MolFromSmiles(smiles, sanitize=False)
    return [a.GetIdx() for a in mol.GetAtoms() if a.GetIsAromatic()]


def main():
    out = sys.stdout
    out.write("smiles\tatoms\tbonds\tring6\thydrogens\t" +
              "\t".join(GROUP_ORDER) + "\n")
    for smi in MOLECULES:
        mol = Chem.MolFromSmiles(smi)
        if mol is None:
            raise SystemExit(f"rdkit rejected {smi}")
        perceived = [a.GetIdx() for a in mol.GetAtoms() if a.GetIsAromatic()]
        written = notation_aromatic(smi)
        # Only molecules whose perceived aromaticity matches the notation are
        # usable as predicate oracles; kekule forms are kept for counts only.
        agree = perceived == written
        hs = ",".join(str(a.GetTotalNumHs()) for a in mol.GetAtoms())
        ring6 = sum(1 for r in mol.GetRingInfo().AtomRings() if len(r) == 6)
        cols = [smi, str(mol.GetNumAtoms()), str(mol.GetNumBonds()),
                str(ring6), hs]
        for g in GROUP_ORDER:
            if not agree and g in ("phenyl", "aromatic_ring"):
                cols.append("-")
                continue
            hit = any(mol.HasSubstructMatch(p) for p in PATTERNS[g])
            cols.append("1" if hit else "0")
        out.write("\t".join(cols) + "\n")


if __name__ == "__main__":
    main()
