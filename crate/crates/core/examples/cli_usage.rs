//! Drives the command-line front end in process on a temporary spec file.

use canonical_weyl::cli::run;

fn main() {
    let dir = std::env::temp_dir().join(format!("canonical-weyl-example-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("temp dir");
    let spec = dir.join("power.json");
    std::fs::write(&spec, r#"{"kind":"power","rho":[1,2],"kappa":[1,1,0.3]}"#).expect("write spec");
    let spec = spec.to_str().expect("utf-8 path");
    let commands: [&[&str]; 4] = [
        &["power-q", "--spec", spec, "--z", "0+1i,1+1i"],
        &["numeric-q", "--spec", spec, "--z", "0+1i,1+1i"],
        &["predict", "--spec", spec],
        &["verify", "--spec", spec, "--r-grid", "10,100", "--angles", "pi/2"],
    ];
    for args in commands {
        let argv = std::iter::once("canonical-weyl").chain(args.iter().copied());
        let code = run(argv, &mut std::io::stdout(), &mut std::io::stderr());
        println!("exit code {code}\n");
    }
    let _ = std::fs::remove_dir_all(&dir);
}
