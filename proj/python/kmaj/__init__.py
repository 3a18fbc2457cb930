"""Sequence majorization and K-functional toolkit (pybind11 core)."""

try:
    from ._kmaj import (  # noqa: F401
        c_q_bound,
        check_hlp,
        check_sq_premise,
        hlp_transfer,
        k_l1_linf,
        k_l1_lq,
        rearrange,
        run_pipeline,
        space_norm,
        verify_thm_easy,
    )
except ImportError:  # in-tree use: the module sits on sys.path directly
    from _kmaj import (  # noqa: F401
        c_q_bound,
        check_hlp,
        check_sq_premise,
        hlp_transfer,
        k_l1_linf,
        k_l1_lq,
        rearrange,
        run_pipeline,
        space_norm,
        verify_thm_easy,
    )

__all__ = [
    "c_q_bound",
    "check_hlp",
    "check_sq_premise",
    "hlp_transfer",
    "k_l1_linf",
    "k_l1_lq",
    "rearrange",
    "run_pipeline",
    "space_norm",
    "verify_thm_easy",
]
