"""Per-criterion outcomes, shared by test_acceptance and the summary hook."""

import functools

RESULTS: dict[int, list] = {}


def record(n: int, title: str, ok: bool, detail: str = ""):
    title_, ok_, details = RESULTS.setdefault(n, [title, True, []])
    RESULTS[n][1] = ok_ and ok
    if detail:
        details.append(detail)


def criterion(n: int, title: str):
    """Record the outcome of a test under criterion ``n`` and print a line."""

    def wrap(fn):
        @functools.wraps(fn)
        def run(*args, **kwargs):
            try:
                fn(*args, **kwargs)
            except AssertionError as exc:
                record(n, title, False, str(exc).splitlines()[0] if str(exc) else fn.__name__)
                print(f"criterion {n} FAIL: {title}")
                raise
            record(n, title, True)
            print(f"criterion {n} PASS: {title}")

        return run

    return wrap
