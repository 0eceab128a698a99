"""AME states for non-prime local dimension, by stacking prime witnesses.

Factor d into primes, pick one AME graph per factor, and hand each
party one qudit of each: entanglement adds across the factors. Repeated
primes need a grouped witness - d = 4 uses eight qubits in four pairs,
which is AME at party level but deliberately not an AME(8,2) state.
"""

from amegraph.composite import build_composite, factorize, format_report, verify_composite

print("d = 6 on five parties: factors", factorize(6))
comp = build_composite(5, 6)
print(format_report(comp, verify_composite(comp)))

print("d = 4 on four parties: factors", factorize(4))
comp = build_composite(4, 4)
print(format_report(comp, verify_composite(comp)), end="")
print("\nthe grouped witness is maximally entangled for every party cut, yet")
print("splitting a pair shows it is not AME over its eight bare qubits")
