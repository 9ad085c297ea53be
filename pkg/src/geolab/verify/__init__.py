"""Verification harness: oracle campaigns, structural checks, scripted
playouts and golden fixtures."""
from .campaign import (
    SpecError,
    SpecResult,
    build_formula_artifact,
    bundled_spec,
    play_instance,
    playout_campaign,
    run_campaign,
    run_spec,
    structure_campaign,
)
from .certificate import race_certificate
from .fixtures import counterexample, lemma_fixtures, lemma_path
from .oracle import ORACLE_KINDS, Corpus, verify_oracle
from .playout import Playout, StrategyError, ledger_figures, predicted_figures, scripted_playout
from .report import Mismatch, VerifyReport
from .strategies import (
    ScriptDiverged,
    ScriptedStrategy,
    Strategy,
    scripted_proper_play,
    search_based,
    territory_move,
    uniform_random,
)
from .structure import DropRoleEdge, drop_edge, role_edges, shorten_path, verify_structure

__all__ = [
    "ORACLE_KINDS",
    "Corpus",
    "DropRoleEdge",
    "Mismatch",
    "Playout",
    "ScriptDiverged",
    "ScriptedStrategy",
    "SpecError",
    "SpecResult",
    "Strategy",
    "StrategyError",
    "VerifyReport",
    "build_formula_artifact",
    "bundled_spec",
    "counterexample",
    "drop_edge",
    "ledger_figures",
    "lemma_fixtures",
    "lemma_path",
    "play_instance",
    "playout_campaign",
    "predicted_figures",
    "race_certificate",
    "role_edges",
    "run_campaign",
    "run_spec",
    "scripted_playout",
    "scripted_proper_play",
    "search_based",
    "shorten_path",
    "structure_campaign",
    "territory_move",
    "uniform_random",
    "verify_oracle",
    "verify_structure",
]
