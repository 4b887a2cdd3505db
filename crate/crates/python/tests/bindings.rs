use pyo3::prelude::*;
use pyo3::types::PyDict;

const FIXTURE: &str = include_str!("../../core/fixtures/hypertension.net");

fn with_module<F: FnOnce(Python<'_>, &Bound<'_, PyDict>)>(f: F) {
    Python::initialize();
    Python::attach(|py| {
        let module = pyo3::wrap_pymodule!(rootcause_py::rootcause_py)(py);
        let globals = PyDict::new(py);
        globals.set_item("rc", module).unwrap();
        globals.set_item("TEXT", FIXTURE).unwrap();
        f(py, &globals);
    });
}

#[test]
fn prc_and_rank_from_python() {
    with_module(|py, g| {
        py.run(
            c"
net = rc.Network.parse(TEXT)
assert net.p == 5 and net.outcome == 'Y'
assert net.validate() == []
assert abs(rc.prc(net, '{X1,X2}', 'X1=1 X2=1 X3=1 X4=1 X5=1 Y=1') - 0.5370) < 1e-4
rows = rc.rank(net, 'Y=1', engine='both')
none = next(r for r in rows if r['candidate'] == 'none')
assert abs(none['prc'] - 0.3749) < 1e-4 and none['posttce'] is None
assert max(r['delta'] for r in rows) < 1e-10
assert rc.oracle_check(p=2, seeds=5)['passed']
",
            Some(g),
            None,
        )
        .unwrap();
    });
}

#[test]
fn errors_become_python_exceptions() {
    with_module(|py, g| {
        py.run(
            c"
for call in [lambda: rc.Network.parse(''), lambda: rc.prc(rc.Network.parse(TEXT), '{Y}'),
             lambda: rc.prc(rc.Network.parse(TEXT), 'X1', engine='fast'), lambda: rc.oracle_check(p=9)]:
    try:
        call()
    except ValueError:
        pass
    else:
        raise AssertionError('no error')
",
            Some(g),
            None,
        )
        .unwrap();
    });
}
