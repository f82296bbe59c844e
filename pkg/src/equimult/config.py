"""Run-wide defaults.

Everything here can be overridden per call; these are the values used when a
caller passes nothing.  The working characteristic 32003 is deliberate: exact
rational Groebner runs on the heavier catalog entries are prohibitively slow,
and two agreeing medium primes are the accepted stand-in for characteristic 0.
"""

DEFAULT_CHAR = 32003
CROSSCHECK_CHAR = 31991

# Truncation / fitting windows for the length-sequence invariants.
DEFAULT_N_MAX = 8
DEFAULT_K_MAX = 40
DEFAULT_WINDOW = 2

# Buchberger step budget (number of processed S-pairs) and a cap on the
# ambient rank of symmetric powers.
DEFAULT_BUDGET = 2_000_000
DEFAULT_REES_RANK_CAP = 500_000

# Bounded redraws for probability-1 generic choices.
DEFAULT_REDRAWS = 5

SEED_ENV_VAR = "EQUIMULT_SEED"
DEFAULT_SEED = 0
