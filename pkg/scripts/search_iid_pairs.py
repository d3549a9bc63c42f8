"""Look for distinct iid baseline pairs that satisfy every hypothesis of the minimum rh theorem."""
from extremeorders.baseline import make_exponential
from extremeorders.grid import default_grid
from extremeorders.theorem_harness import demonstrate_remark_31, search_c31_iid_pairs

if __name__ == "__main__":
    grid = default_grid(999)
    found = search_c31_iid_pairs(grid)
    print(f"distinct pairs verifying: {len(found)}")
    for f, g, _ in found:
        print(f"  {f} vs {g}")
    rep = demonstrate_remark_31(make_exponential(2.0), make_exponential(1.0), 5, grid)
    print(f"exp(2) vs exp(1): survival ratio strictly decreasing in n: {rep.strictly_decreasing}; "
          f"variation-diminishing case: {rep.case.classification.value}")
