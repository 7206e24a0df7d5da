# Mode 1 (prefilter) vs Mode 2 (none) and the per-phase time split, in the
# shape of the usual size sweep. The baseline column is this package's
# monotone chain on the same machine, so speedups are CPU vs CPU.
#
#   python demos/03_modes_and_phases.py

from seghull.bench import BenchConfig, format_table, parse_gen, run_bench
from seghull.dataio import gen_uniform
from seghull.hull import preprocess

sizes = [100_000, 200_000, 500_000, 1_000_000, 2_000_000]
config = BenchConfig(
    datasets=[parse_gen(f"uniform:{n}:1") for n in sizes],
    modes=[1, 2],
    repeat=3,
    verify=True,
)
records = run_bench(config)
print(format_table(records))

# How much the prefilter removes depends on where the four extreme points
# land on the square's sides; the average is one half.
print()
for seed in range(1, 6):
    _, dropped = preprocess(gen_uniform(1_000_000, seed))
    print(f"seed {seed}: prefilter discards {dropped / 1e6:.1%}")
