import os
import stat
import sys
import textwrap

import pytest


def _write_script(path, body: str) -> str:
    path.write_text(f"#!{sys.executable}\n" + textwrap.dedent(body))
    path.chmod(path.stat().st_mode | stat.S_IXUSR | stat.S_IXGRP | stat.S_IXOTH)
    return str(path)


@pytest.fixture
def external_solver(tmp_path):
    """Competition-style external solver backed by the embedded one."""
    return _write_script(
        tmp_path / "fake-solver",
        """
        import sys
        from pearlsat.dimacs import parse_dimacs
        from pearlsat.solver import dpll_solve

        result = dpll_solve(parse_dimacs(open(sys.argv[1]).read()))
        if result.is_sat:
            print("s SATISFIABLE")
            lits = [v if val else -v for v, val in sorted(result.model.items())]
            print("v " + " ".join(map(str, lits + [0])))
            sys.exit(10)
        print("s UNSATISFIABLE")
        sys.exit(20)
        """,
    )


@pytest.fixture
def exitcode_only_solver(tmp_path):
    """Solver that reports its verdict through the exit code alone."""
    return _write_script(
        tmp_path / "codes-solver",
        """
        import sys
        from pearlsat.dimacs import parse_dimacs
        from pearlsat.solver import dpll_solve

        result = dpll_solve(parse_dimacs(open(sys.argv[1]).read()))
        if result.is_sat:
            lits = [v if val else -v for v, val in sorted(result.model.items())]
            print("v " + " ".join(map(str, lits + [0])))
            sys.exit(10)
        sys.exit(20)
        """,
    )


@pytest.fixture
def broken_solver(tmp_path):
    return _write_script(
        tmp_path / "broken-solver",
        """
        import sys
        print("segmentation fault (not really)")
        sys.exit(3)
        """,
    )


@pytest.fixture
def lying_solver(tmp_path):
    """Claims SAT with an all-false model regardless of the input."""
    return _write_script(
        tmp_path / "lying-solver",
        """
        import sys
        print("s SATISFIABLE")
        print("v 0")
        sys.exit(10)
        """,
    )


@pytest.fixture
def sleeping_solver(tmp_path):
    return _write_script(
        tmp_path / "sleeping-solver",
        """
        import time
        time.sleep(60)
        """,
    )
