use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use superosp::derivations::der_space;
use superosp::instance::InstanceSpec;
use superosp::jordan::{JordanModuleX, JordanQF};
use superosp::par::Execution;

const INSTANCES: &[&str] = &["dualnum_so3_plus_R1", "g2_so3"];

fn load(name: &str) -> superosp::instance::Instance {
    let path = format!("{}/corpus/{name}.json", env!("CARGO_MANIFEST_DIR"));
    InstanceSpec::from_path(path)
        .unwrap()
        .build(Execution::best())
        .unwrap()
}

fn modes() -> [(&'static str, Execution); 2] {
    [
        ("sequential", Execution::Sequential),
        ("parallel", Execution::best()),
    ]
}

fn jacobi(c: &mut Criterion) {
    let mut g = c.benchmark_group("jacobi");
    for name in INSTANCES {
        let inst = load(name);
        for (label, exec) in modes() {
            g.bench_with_input(BenchmarkId::new(label, name), &exec, |b, &exec| {
                b.iter(|| inst.einfty.check_jacobi(exec))
            });
        }
    }
    g.finish();
}

fn derivations(c: &mut Criterion) {
    let mut g = c.benchmark_group("der_space");
    g.sample_size(10);
    for name in INSTANCES {
        let inst = load(name);
        for (label, exec) in modes() {
            g.bench_with_input(BenchmarkId::new(label, name), &exec, |b, &exec| {
                b.iter(|| der_space(&inst.einfty, exec))
            });
        }
    }
    g.finish();
}

fn jordan_axioms(c: &mut Criterion) {
    let mut g = c.benchmark_group("jordan_module_axioms");
    g.sample_size(10);
    for name in INSTANCES {
        let inst = load(name);
        let j = JordanQF::new(inst.ops.clone());
        let x = JordanModuleX::new(&j, inst.einfty.e_space()).unwrap();
        for (label, exec) in modes() {
            g.bench_with_input(BenchmarkId::new(label, name), &exec, |b, &exec| {
                b.iter(|| x.verify_axioms(1, exec))
            });
        }
    }
    g.finish();
}

criterion_group!(benches, jacobi, derivations, jordan_axioms);
criterion_main!(benches);
