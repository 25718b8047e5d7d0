"""Sampler internals: potentials, probabilities, weights, and m-tuning.

Steps the barrier-potential state machine by hand to show what the
selector does each round, then runs the condition-number rule that picks
the candidate-set size.
"""

import numpy as np

import gaq
from gaq.seeding import substream

inst = gaq.generate_instance(gaq.benchmark_spec("ws", n=100, seed=0))
sb = gaq.spectral_basis(inst.graph, 10)
sc = gaq.smoothed_basis(sb, inst.X)

state = gaq.init_state(sc.rank, epsilon=1e-3, m=10, budget=15)
print(f"initial barriers: u={state.u:.0f} l={state.l:.0f} kappa={state.kappa:.0f}")
print(f"initial potential: {gaq.potential(state):.6f} (equals epsilon)")

rng = substream(0, 42)
print("\nround  potential   sum(p)   picked  weight")
for t in range(15):
    phi = gaq.potential(state)
    probs = gaq.sampling_probs(state, sc)
    draw = gaq.draw_candidates(probs, state.m, rng, epsilon=state.epsilon, potential_value=phi)
    ctx = gaq.build_context(inst.graph, inst.X, state.S, 16)
    pick = gaq.argmax_score(gaq.info_gain_scores(ctx), sorted(set(draw.candidates)))
    state = gaq.apply_selection(state, pick, float(probs[pick]), sc.basis[pick])
    print(f"{t:5d}  {phi:.6f}  {probs.sum():.6f}  {pick:5d}  {state.weights[pick]:.4f}")

evals = np.linalg.eigvalsh(state.C)
print(f"\ncovariance spectrum inside barriers: [{evals[0]:.3f}, {evals[-1]:.3f}] "
      f"within ({state.l:.2f}, {state.u:.2f})")

# The selector tunes m with a condition-number rule: the largest candidate
# count whose final weighted design stays below condition number 10.
tuned = gaq.tune_m(inst.graph, inst.X, gaq.SelectorConfig(budget=25, seed=5), [5, 10, 20, 50])
print("\ncondition number by candidate-set size:")
for m, cond in sorted(tuned.condition_numbers.items()):
    print(f"  m={m:3d}: {cond:.2f}")
print(f"chosen m = {tuned.m} (well conditioned: {tuned.well_conditioned})")
