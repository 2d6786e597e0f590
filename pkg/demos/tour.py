"""A short walk through the library: build loops, check identities, take isotopes, search."""

from loopkit import IsotopeSpec, SearchQuery, parse_identity, predicate, principal_isotope, search, validate
from loopkit.corpus import l5, moufang12
from loopkit.terms import holds

z4 = validate([[(a + b) % 4 for b in range(4)] for a in range(4)])
print("Z4 universal Osborn:", predicate(z4, "universal-osborn").holds)

iso = principal_isotope(z4, IsotopeSpec.full(2, 1))
print("isotope (2, 1) of Z4 has identity", iso.identity)
print(iso)

L5 = l5()
r = holds(L5, parse_identity("(x*x)*x = x*(x*x)"))
print("L5 satisfies xx.x = x.xx:", r.holds, "counterexample:", r.counterexample)

for method in ("identity", "bruteforce"):
    rep = predicate(L5, "universal-osborn", method)
    print(f"L5 universal Osborn by {method}:", rep.holds, rep.witness)

M = moufang12()
print("M12: moufang", predicate(M, "moufang").holds, "cc", predicate(M, "cc").holds,
      "associative", M.is_associative())

hits = search(SearchQuery(order=6, require=("cc",), forbid=("associative",)))
print(len(hits), "nonassociative CC-loops of order 6 (as reduced tables)")
