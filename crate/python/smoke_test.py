"""Smoke test for the Python bindings.

Build and install first, for example:
    maturin develop -m crates/py/Cargo.toml --release
"""
import lcdcodes


def main():
    h = lcdcodes.paley(3)
    assert lcdcodes.validate_weighing(h) == 4

    res = lcdcodes.build_skew_hadamard(3, 0, 3)
    assert res.predicted == "LCD", res.trace
    code = res.code()
    assert (code.n, code.k, code.q) == (8, 4, 3)
    assert code.is_lcd() and code.hull_dimension() == 0
    assert code.min_distance() == (4, 4, True)
    assert code.report() == "8 4 4[EXACT] 3 0 lcd=yes fsd=yes[EXACT]"
    wd = code.weight_distribution()
    assert sum(wd) == 3 ** 4 and wd == code.dual().weight_distribution()

    res = lcdcodes.build_skew_hadamard(7, 2, 3)
    dec = lcdcodes.Decoder(3, res.generator, res.dual_generator, 6)
    assert dec.radius == 2
    c = res.code().basis()[0]
    w = list(c)
    w[9] = (w[9] + 1) % 3
    assert dec.decode(w) == c
    w[0] = (w[0] + 2) % 3
    assert dec.decode(w, complete=True) == c
    cw, e = dec.project(w)
    assert [(a + b) % 3 for a, b in zip(cw, e)] == w

    rows = lcdcodes.reproduce(5)
    assert all("SKIPPED" in r for r in rows)

    try:
        lcdcodes.paley(5)
    except ValueError:
        pass
    else:
        raise AssertionError("paley(5) should fail")
    print("python smoke test: ok")


if __name__ == "__main__":
    main()
