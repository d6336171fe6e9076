#!/usr/bin/env python3
"""
Step 2: Round-trip the characterization of the sigma_tau family

Input:
- config.SAMPLE_SPECS
- random rational tau in the upper half-plane (seeded)

Output:
- data/output/02_theorem1_roundtrip.csv (one row per spec, tau and test case)

Strategy:
1. Restrict Z_tau to the K_0 basis
2. theorem1_check must accept and recover tau exactly
3. Break one clause at a time (mass, simple consistency, phase of O)
   and check that the rejection names that clause
"""

import sys
import os
sys.path.append(os.path.dirname(os.path.dirname(__file__)))

from fractions import Fraction

import numpy as np
import pandas as pd
from tqdm import tqdm

import lattice
import stability
from exactnum import GaussRat
from utils import save_checkpoint, validate_dataframe, logger
import config

TAUS_PER_SPEC = 10
COLUMNS = ['A', 'tau', 'case', 'accepted', 'reason', 'expected_reason', 'ok']


def random_tau(rng: np.random.Generator) -> GaussRat:
    re = Fraction(int(rng.integers(-12, 13)), int(rng.integers(1, 7)))
    im = Fraction(int(rng.integers(1, 13)), int(rng.integers(1, 7)))
    return GaussRat(re, im)


def roundtrip_rows(weights: tuple, tau: GaussRat) -> list[dict]:
    spec = lattice.WeightSpec(weights)
    sigma = stability.StabilityParam(tau)
    label = lattice.format_weights(spec)

    rows = []
    result = stability.theorem1_check(stability.charge_assignment_from_tau(spec, sigma), spec)
    rows.append({'A': label, 'tau': str(tau), 'case': 'unperturbed', 'accepted': result.accepted,
                 'reason': '', 'expected_reason': '',
                 'ok': result.accepted and result.tau == tau})

    for reason, assignment in stability.perturbed_assignments(spec, sigma).items():
        result = stability.theorem1_check(assignment, spec)
        got = result.reason.value if result.reason else ''
        rows.append({'A': label, 'tau': str(tau), 'case': f"perturbed_{reason.value}",
                     'accepted': result.accepted, 'reason': got, 'expected_reason': reason.value,
                     'ok': not result.accepted and result.reason == reason})
    return rows


def main():
    logger.info("=" * 60)
    logger.info("Step 2: Characterization Round Trip")
    logger.info("=" * 60)

    rng = np.random.default_rng(config.RANDOM_SEED)
    jobs = [(weights, random_tau(rng)) for weights in config.SAMPLE_SPECS for _ in range(TAUS_PER_SPEC)]

    rows = []
    for weights, tau in tqdm(jobs, desc="Round trips"):
        rows.extend(roundtrip_rows(weights, tau))

    df = pd.DataFrame(rows, columns=COLUMNS)
    validate_dataframe(df, COLUMNS)
    save_checkpoint(df, f"{config.OUTPUT_DIR}/02_theorem1_roundtrip.csv")

    failed = df[~df['ok']]
    logger.info(f"\n{'=' * 60}")
    logger.info(f"  Cases run: {len(df)}")
    logger.info(f"  Failures: {len(failed)}")
    if len(failed) > 0:
        for _, row in failed.iterrows():
            logger.warning(f"  ({row['A']}) tau={row['tau']} {row['case']}: got '{row['reason']}'")

    logger.info(f"\n✓ Step 2 complete")
    logger.info("Next: Run 03_gldim_by_type.py")


if __name__ == "__main__":
    main()
