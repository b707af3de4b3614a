//! The remote environment path end to end over TCP. A thread plays the
//! bridge's role by serving the simulator over the wire protocol; the
//! harness connects to it exactly as it would to an emulator bridge.

use std::io::{BufReader, BufWriter};
use std::net::{TcpListener, TcpStream};
use std::thread;

use pct_agent::harness::{run_batch_with, serve, sim_preset, RemoteEnv, RunConfig, SimEnv};
use pct_agent::sim::Game;

fn main() -> anyhow::Result<()> {
    let episodes = 3;
    let listener = TcpListener::bind("127.0.0.1:0")?;
    let addr = listener.local_addr()?;

    let (sim, crop, layout, hierarchy) = sim_preset(Game::Breakout);
    let bridge = thread::spawn(move || -> anyhow::Result<usize> {
        let stream = TcpStream::connect(addr)?;
        let mut env = SimEnv::new(sim)?;
        Ok(serve(
            &mut env,
            episodes,
            BufReader::new(stream.try_clone()?),
            BufWriter::new(stream),
        )?)
    });

    let (stream, peer) = listener.accept()?;
    println!("bridge connected from {peer}");
    let cfg = RunConfig {
        episodes,
        max_steps: 6_000,
        crop,
        layout,
        hierarchy,
        ..RunConfig::remote(Game::Breakout, addr.to_string())
    };
    let mut env = RemoteEnv::new(BufReader::new(stream.try_clone()?), BufWriter::new(stream));
    let table = run_batch_with(&cfg, &mut env)?;
    drop(env);

    for e in &table.episodes {
        println!(
            "episode {}: total reward {} over {} steps ({:?})",
            e.episode, e.total_reward, e.steps, e.termination
        );
    }
    let served = bridge.join().expect("bridge thread panicked")?;
    println!("bridge served {served} episodes");
    Ok(())
}
