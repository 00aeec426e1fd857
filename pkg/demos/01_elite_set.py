"""Build the elite institution set from annual ranking lists and match raw affiliations.

Run: python3 demos/01_elite_set.py
"""

from aaidx import reference

elite = reference.education_elite_set()
print(f"{elite.h} elite institutions, {len(elite.tier1)} in tier 1 (weight {elite.tier1[0].weight})")

for inst in elite.tier1:
    print(f"  tier 1: {inst.canonical_name}")

# Affiliation strings as they appear in bibliographic exports.
raw = [
    "UCL, Inst Educ, London, England",
    "Univ Calif Berkeley, Grad Sch Educ, Berkeley, CA 94720 USA",
    "Boston Coll, Lynch Sch Educ, Chestnut Hill, MA USA",
    "Univ Nebraska, Lincoln, NE USA",
]
for text in raw:
    hit = elite.match(text)
    label = f"{hit.canonical_name} ({hit.tier.name})" if hit else "not elite"
    print(f"{text!r:70} -> {label}")
