#!/usr/bin/env python3
"""Two sites, one deadline: when does precomputation beat sending the input?

Alice's half of the computation finishes at t1 and the answer is due at t2.
Bob sits one message away.  Conventionally he cannot start until Alice's
output arrives; with shared entanglement he can run his part early and only
needs the Bell-measurement outcome, a classical message, to fix the frame.
"""

from instaqc import TimelineConfig, simulate_timeline


def show(label: str, config: TimelineConfig) -> None:
    report = simulate_timeline(config)
    print(f"{label}:")
    print(f"  Alice output ready        t = {report.alice_output_time:g}")
    print(f"  outcome message arrives   t = {report.message_arrival_time:g}")
    print(f"  Bob's precomputation done t = {report.bob_ready_time:g}")
    print(f"  conventional finish       t = {report.conventional_finish_time:g}")
    print(f"  Bob answers on arrival:   {report.bob_can_answer_instantly}")
    print(f"  teleport meets t2 = {config.t2:g}:    "
          f"{report.teleport_meets_deadline}")
    print(f"  conventional meets t2:    {report.conventional_meets_deadline}")
    print()


# Bob started early enough that his 8 units of work finish before the
# outcome message lands; the conventional path blows the deadline.
show("advantage scenario", TimelineConfig(
    t1=0.0, t2=10.0,
    alice_duration=1.0,
    bob_duration=8.0,
    bob_start=-5.0,
    classical_latency=2.0,
    bsm_duration=0.5,
))

# Same numbers but Bob procrastinates: starting at t = 0 his work becomes
# the bottleneck, yet the precomputed path still makes the deadline the
# conventional path misses.
show("late-start scenario", TimelineConfig(
    t1=0.0, t2=10.0,
    alice_duration=1.0,
    bob_duration=8.0,
    bob_start=0.0,
    classical_latency=2.0,
    bsm_duration=0.5,
))

# Latency sweep: the advantage window is exactly the latency that the
# conventional path wastes waiting for the quantum state to travel.
print("latency sweep (t1=0, t2=10, alice=1, bob=8 started at -5, bsm=0):")
print(f"{'latency':>8} {'teleport ok':>12} {'conventional ok':>16}")
for latency in (0.0, 0.5, 1.0, 2.0, 5.0, 9.0, 12.0):
    report = simulate_timeline(TimelineConfig(
        t1=0.0, t2=10.0, alice_duration=1.0, bob_duration=8.0,
        bob_start=-5.0, classical_latency=latency,
    ))
    print(f"{latency:>8g} {str(report.teleport_meets_deadline):>12} "
          f"{str(report.conventional_meets_deadline):>16}")
