"""Graph dimension of the evolved ball indicator at t = 2 pi versus the golden time."""
from symharm.schrodinger import DataSpec, TimeSpec, talbot_experiment
from symharm.spaces import space_params

if __name__ == "__main__":
    times = [TimeSpec("rational", p=1, q=1), TimeSpec("golden")]
    for key in (("sphere", 2), ("sphere", 3), ("cproj", 4)):
        rep = talbot_experiment(space_params(*key), DataSpec("ball", theta0=1.0), times, 1024)
        dims = {r["t_spec"]["label"]: r["dimension"]["dimension"] for r in rep["times"]}
        print(f"{key[0]}{key[1]}: " + ", ".join(f"{k} {v:.3f}" for k, v in dims.items()))
