#!/usr/bin/env python3
#
# biocorpus - Copyright 2026 The biocorpus Authors
# SPDX-License-Identifier: Apache-2.0
#
"""Regenerates the small synthetic corpus in data/sample.

Usage: make_sample_data.py --cli build/biocorpus --out data/sample
"""

import argparse
import json
import pathlib
import random
import subprocess

NAMED = [
    ("ethanol", "CCO"), ("aspirin", "CC(=O)Oc1ccccc1C(=O)O"), ("caffeine", "Cn1cnc2c1c(=O)n(C)c(=O)n2C"),
    ("benzene", "c1ccccc1"), ("acetic acid", "CC(=O)O"), ("acetone", "CC(C)=O"), ("phenol", "Oc1ccccc1"),
    ("toluene", "Cc1ccccc1"), ("glycine", "NCC(=O)O"), ("urea", "NC(N)=O"), ("methanol", "CO"),
    ("pyridine", "c1ccncc1"), ("ibuprofen", "CC(C)Cc1ccc(cc1)C(C)C(=O)O"),
    ("paracetamol", "CC(=O)Nc1ccc(O)cc1"), ("nicotine", "CN1CCCC1c1cccnc1"),
    ("dopamine", "NCCc1ccc(O)c(O)c1"), ("serotonin", "NCCc1c[nH]c2ccc(O)cc12"),
    ("glycerol", "OCC(O)CO"), ("lactic acid", "CC(O)C(=O)O"), ("β-alanine", "NCCC(=O)O"),
]
UNRESOLVED_MOLECULES = ["compound X-17", "mysterol"]
GENES = ["TP53", "EGFR", "KRAS", "BRCA1", "MYC", "AKT1", "PTEN", "VEGFA", "INS", "ALB"]
UNRESOLVED_GENES = ["ZNF999", "ORF7b"]
RESIDUES = "ACDEFGHIKLMNPQRSTVWY"
VERBS = ["inhibits", "binds", "modulates", "reduces", "increases", "regulates"]
NOUNS = ["cell growth", "the receptor", "inflammation", "apoptosis", "the enzyme"]
FILLER = ["in vitro", "in human cells", "under mild conditions", "at low concentration", "in mouse models"]
CLASSES = ["an organic compound", "a metabolite", "a solvent", "a drug", "an aromatic compound"]
LOCATIONS = ["Cytoplasm", "Nucleus", "Cell membrane", "Mitochondrion", "Secreted"]
FAMILIES = ["Belongs to the kinase family", "Belongs to the p53 family", "Belongs to the RAS family"]


def encode(cli, smiles):
    out = subprocess.run([cli, "selfies", "encode", "--strict", *smiles], check=True, capture_output=True, text=True)
    return out.stdout.split("\n")[: len(smiles)]


def protein(rng, lo=30, hi=120):
    return "M" + "".join(rng.choice(RESIDUES) for _ in range(rng.randint(lo, hi) - 1))


def mention(rng, mol_ids, gene_ids):
    roll = rng.random()
    if roll < 0.45:
        name = rng.choice(list(mol_ids) + UNRESOLVED_MOLECULES)
        return (name, "molecule", mol_ids.get(name, "CHEBI:0"))
    if roll < 0.85:
        g = rng.choice(GENES + UNRESOLVED_GENES)
        return (g, "gene", gene_ids.get(g, "P00000"))
    return (rng.choice(NOUNS), None, None)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--cli", required=True)
    ap.add_argument("--out", required=True)
    ap.add_argument("--molecules", default="data/molecules.smi")
    args = ap.parse_args()
    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    rng = random.Random(2026)

    named_selfies = encode(args.cli, [s for _, s in NAMED])
    mol_ids = {name: f"CHEBI:{1000 + i}" for i, (name, _) in enumerate(NAMED)}
    with open(out / "molecules.tsv", "w") as f:
        for (name, _), sf in zip(NAMED, named_selfies):
            f.write(f"{mol_ids[name]}\t{sf}\n")

    gene_ids = {g: f"P{10000 + i}" for i, g in enumerate(GENES)}
    with open(out / "proteins.tsv", "w") as f:
        for g in GENES:
            f.write(f"{gene_ids[g]}\t{protein(rng)}\n")

    with open(out / "proteins.fasta", "w") as f:
        for i in range(80):
            seq = protein(rng, 20, 300)
            f.write(f">sp|Q{20000 + i}|SYN{i} synthetic protein {i}\n")
            for k in range(0, len(seq), 60):
                f.write(seq[k:k + 60] + "\n")

    docs = open(out / "documents.jsonl", "w")
    anns = open(out / "annotations.jsonl", "w")
    for d in range(150):
        doc_id = f"PMID{300000 + d}"
        text = ""
        spans = []
        for _ in range(rng.randint(1, 5)):
            if text:
                text += " "
            parts = [mention(rng, mol_ids, gene_ids), (" " + rng.choice(VERBS) + " ", None, None),
                     mention(rng, mol_ids, gene_ids)]
            if rng.random() < 0.5:
                parts.append((" " + rng.choice(FILLER), None, None))
            text += "In this study, "
            for surface, kind, eid in parts:
                if kind is not None:
                    spans.append({"doc_id": doc_id, "start": len(text), "end": len(text) + len(surface),
                                  "surface": surface, "kind": kind, "entity_id": eid})
                text += surface
            text += "."
        docs.write(json.dumps({"id": doc_id, "text": text}, ensure_ascii=False) + "\n")
        for sp in spans:
            anns.write(json.dumps(sp, ensure_ascii=False) + "\n")
    docs.close()
    anns.close()

    corpus = [l.strip() for l in open(args.molecules) if l.strip()][:200]
    corpus_selfies = encode(args.cli, corpus)
    with open(out / "pairs.jsonl", "w") as f:
        for i, sf in enumerate(corpus_selfies):
            rec = {"id": f"M{i}", "kind": "molecule", "sequence": sf,
                   "fields": {"DESCRIPTION": f"The molecule is {rng.choice(CLASSES)} with {len(sf.split(']')) - 1} "
                                             f"SELFIES tokens."}}
            if i % 3 == 0:
                rec["name"] = f"compound {i}"
            f.write(json.dumps(rec) + "\n")
        for i in range(100):
            fields = {"FUNCTION": f"Catalyzes reaction {i} and {rng.choice(VERBS)} signalling."}
            if i % 2 == 0:
                fields["SUBCELLULAR LOCATION"] = rng.choice(LOCATIONS)
            if i % 5 == 0:
                fields["PROTEIN FAMILIES"] = rng.choice(FAMILIES)
            f.write(json.dumps({"id": f"P{i}", "kind": "protein", "sequence": protein(rng),
                                "name": f"Synthetic protein {i}", "fields": fields}) + "\n")

    with open(out / "exclude.txt", "w") as f:
        f.write("M5\nM17\nP3\n")


if __name__ == "__main__":
    main()
