import os
import sys
import json
import click
import numpy as np
from jinja2 import Environment
from typing import List
from voxfuse.core import Settings
from voxfuse.core.units import RotationMethod
from voxfuse.core.utils import fixed
from voxfuse.core.utils.log import init_log
from voxfuse.core.utils import formats
from voxfuse.core.errors import FieldError, VoxFuseError
from voxfuse.core.models import Message
from voxfuse.synthetic import PRESETS, build_dataset
from voxfuse.posedconv import random_kernel, rotate_kernel
from voxfuse.core.geometry import rotation_angle
from voxfuse.pipeline import (
    Fusion,
    Reconstruction,
    Sweep,
    load_dataset,
    load_stage1,
)
from voxfuse import metrics, tsdf
from scipy.spatial.transform import Rotation

EXIT_SUCCESS, EXIT_USAGE, EXIT_DATA = 0, 1, 2

environment = Environment(trim_blocks=True, lstrip_blocks=True, keep_trailing_newline=True)
environment.filters["fixed"] = fixed

KERNEL_TEMPLATE = environment.from_string('''
rotation: {{ angle | fixed }} degrees about {{ axis }}
| Voxel | Discrete | Adjusted | Interp | Clamped |
| --- | --- | --- | --- | --- |
{% for voxel, discrete, adjusted, interp, clamped in rows %}
| {{ voxel }} | {{ discrete }} | {{ adjusted }} | {{ interp }} | {{ clamped }} |
{% endfor %}
'''.lstrip())


class MessagesError(VoxFuseError):
    def __init__(self, messages: List[Message]):
        self.messages = messages
        super().__init__("; ".join(f"[{m.stage}] {m.code}: {m.message}" for m in messages))


def settings_options(command):
    options = [
        click.option("--config", type=click.Path(exists=True, dir_okay=False), help="JSON settings file, overrides flags"),
        click.option("--planes", type=int),
        click.option("--z-min", type=float),
        click.option("--grid-preset", type=str),
        click.option("--origin", type=float, nargs=3),
        click.option("--pitch", type=float),
        click.option("--dims", type=int, nargs=3),
        click.option("--mask-threshold", type=float),
        click.option("--mask/--no-mask", "use_mask", default=None, help="fuse masked or raw stage one depth"),
        click.option("--occupancy/--no-occupancy", "use_occupancy", default=None, help="keep the depth occupancy channel"),
        click.option("--truncation", type=float),
        click.option("--kernel-size", type=int),
        click.option("--channels", type=int),
        click.option("--extractor", type=str),
        click.option("--aggregator", type=str),
        click.option("--sharpness", type=float),
        click.option("--image-size", type=int, nargs=2, help="height width"),
        click.option("--downsample", type=int),
        click.option("--kernel-seed", type=int),
        click.option("--kernel-path", type=click.Path(exists=True, dir_okay=False)),
        click.option("--rotation-method", type=str),
        click.option("--overlap-tolerance", type=float),
        click.option("--relative-denominator", type=str),
        click.option("--point-distance", type=str),
        click.option("--f-threshold", type=float),
        click.option("--workers", type=int),
        click.option("--debug", is_flag=True, default=False),
    ]
    for option in reversed(options):
        command = option(command)
    return command


def to_settings(config=None, debug=False, **flags) -> Settings:
    init_log(debug)
    flags = {k: v for k, v in flags.items() if v is not None and v != ()}
    sweep = {k: flags.pop(k) for k in ("planes", "z_min") if k in flags}
    grid = {k: flags.pop(k) for k in ("origin", "pitch", "dims") if k in flags}
    if "image_size" in flags:
        flags["image_height"], flags["image_width"] = flags.pop("image_size")
    if sweep:
        flags["sweep"] = sweep
    if grid:
        flags["grid"] = {**dict(origin=(-3.2, -1.28, 0.0)), **grid}

    try:
        return Settings.from_file(config, **flags) if config else Settings(**flags)
    except FieldError as e:
        raise click.UsageError(f"{e}: {json.dumps(e.details)}")
    except (VoxFuseError, TypeError, ValueError) as e:
        raise click.UsageError(f"invalid settings: {e}")


def unwrap(parsed):
    result, messages = parsed
    if messages:
        raise MessagesError(messages)
    return result


@click.group()
def cli():
    pass


@cli.command()
@click.argument("output", type=click.Path(file_okay=False))
@click.option("--preset", type=click.Choice(sorted(PRESETS)), default=None)
@click.option("--scene", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--debug", is_flag=True, default=False)
def synth(output, preset, scene, debug):
    """Render a synthetic dataset."""
    init_log(debug)
    if (preset is None) == (scene is None):
        raise click.UsageError("pass exactly one of --preset or --scene")
    if scene is not None:
        with open(scene) as f:
            description = json.load(f)
    else:
        description = PRESETS[preset]
    build_dataset(output, description)
    click.echo(output)


@cli.command()
@click.argument("dataset", type=click.Path(exists=True, file_okay=False))
@click.argument("output", type=click.Path(file_okay=False))
@settings_options
def sweep(dataset, output, **options):
    """Stage one: depth, overlap mask and masked depth per interior frame."""
    settings = to_settings(**options)
    results = unwrap(Sweep.run(dataset, output).with_(settings).parse())
    click.echo(f"{len(results)} frames written to {output}")


@cli.command()
@click.argument("dataset", type=click.Path(exists=True, file_okay=False))
@click.argument("stage1", type=click.Path(exists=True, file_okay=False))
@click.argument("output", type=click.Path(file_okay=False))
@settings_options
def fuse(dataset, stage1, output, **options):
    """Stage two: unified volume, TSDF and mesh."""
    settings = to_settings(**options)
    ds = load_dataset(dataset)
    result = unwrap(Fusion.run(ds, load_stage1(stage1, ds), output).with_(settings).parse())
    click.echo(f"{len(result.mesh.vertices)} mesh vertices written to {output}")


@cli.command()
@click.argument("volume", type=click.Path(exists=True, dir_okay=False))
@click.argument("output", type=click.Path(dir_okay=False))
@click.option("--debug", is_flag=True, default=False)
def mesh(volume, output, debug):
    """Extract the zero level mesh of a TSDF volume."""
    init_log(debug)
    result = tsdf.extract_mesh(formats.load_tsdf(volume))
    formats.save_mesh(output, result)
    click.echo(f"{len(result.vertices)} vertices, {len(result.faces)} faces")


@cli.command("render-depth")
@click.argument("volume", type=click.Path(exists=True, dir_okay=False))
@click.argument("dataset", type=click.Path(exists=True, file_okay=False))
@click.argument("output", type=click.Path(file_okay=False))
@settings_options
def render_depth(volume, dataset, output, **options):
    """Render after-fusion depth maps for every dataset frame."""
    settings = to_settings(**options)
    ds = load_dataset(dataset)
    volume = formats.load_tsdf(volume)
    for index in range(len(ds)):
        depth = tsdf.render_depth(volume, ds.camera(index, settings.downsample))
        formats.save_depth(os.path.join(output, f"{index:06d}.vxfd"), depth)
    click.echo(f"{len(ds)} depth maps written to {output}")


@cli.command("eval-depth")
@click.argument("pred", type=click.Path(exists=True, dir_okay=False))
@click.argument("gt", type=click.Path(exists=True, dir_okay=False))
@click.option("--table", is_flag=True, default=False)
@settings_options
def eval_depth(pred, gt, table, **options):
    """2D depth metrics of a predicted depth map."""
    settings = to_settings(**options)
    report = metrics.eval_depth(formats.load_depth(pred), formats.load_depth(gt), settings.denominator)
    click.echo(
        metrics.render_table([(os.path.basename(pred), report, None)])
        if table else metrics.render_keyvalues(depth=report),
        nl=False,
    )


@cli.command("eval-3d")
@click.argument("pred", type=click.Path(exists=True, dir_okay=False))
@click.argument("gt", type=click.Path(exists=True, dir_okay=False))
@click.option("--pred-tsdf", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--gt-tsdf", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--table", is_flag=True, default=False)
@settings_options
def eval_3d(pred, gt, pred_tsdf, gt_tsdf, table, **options):
    """3D geometry metrics of a predicted mesh."""
    settings = to_settings(**options)
    report = metrics.eval_mesh(
        formats.load_mesh(pred), formats.load_mesh(gt).vertices, settings.f_threshold, settings.distance
    )
    if pred_tsdf and gt_tsdf:
        report.l1 = metrics.eval_tsdf_l1(formats.load_tsdf(pred_tsdf), formats.load_tsdf(gt_tsdf))
    click.echo(
        metrics.render_table([(os.path.basename(pred), None, report)])
        if table else metrics.render_keyvalues(geometry=report),
        nl=False,
    )


@cli.command("rotate-kernel")
@click.option("--size", type=int, default=3)
@click.option("--angle", type=float, default=45.0)
@click.option("--axis", type=click.Choice(["x", "y", "z"]), default="z")
@click.option("--kernel", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--output", type=click.Path(dir_okay=False), default=None)
@click.option("--debug", is_flag=True, default=False)
def rotate_kernel_command(size, angle, axis, kernel, output, debug):
    """Compare the discrete and interpolated kernel rotations voxel by voxel."""
    init_log(debug)
    R = Rotation.from_euler(axis, angle, degrees=True).as_matrix()
    W = formats.load_kernel(kernel) if kernel else random_kernel(1, 1, size)
    discrete = rotate_kernel(W, R, RotationMethod.discrete)
    interp = rotate_kernel(W, R, RotationMethod.interp)

    def coords(value):
        return "(" + ", ".join(fixed(v, 3) for v in value) + ")"

    rows = [
        (
            str(voxel),
            coords(discrete.samples[voxel]),
            bool(discrete.adjusted[voxel]),
            coords(interp.samples[voxel]),
            bool(interp.adjusted[voxel]),
        )
        for voxel in np.ndindex(*(W.size,) * 3)
    ]
    click.echo(KERNEL_TEMPLATE.render(angle=rotation_angle(R), axis=axis, rows=rows))
    if output:
        formats.save_kernel(output, discrete)


@cli.command()
@click.argument("dataset", type=click.Path(exists=True, file_okay=False))
@click.argument("output", type=click.Path(file_okay=False))
@settings_options
def run(dataset, output, **options):
    """Full pipeline: stage one, stage two and evaluation."""
    settings = to_settings(**options)
    stage1, stage2, evaluation = unwrap(Reconstruction.run(dataset, output).with_(settings).parse())
    if evaluation is None:
        click.echo(f"{len(stage1)} frames fused, no ground truth to evaluate")
        return

    report = metrics.render_keyvalues(evaluation.depth, evaluation.geometry)
    if evaluation.losses:
        report += "".join(f"loss_{k}={fixed(v)}\n" for k, v in sorted(evaluation.losses.items()))
    table = metrics.render_table(
        [
            ("before fusion", evaluation.before_fusion, None),
            ("after fusion", evaluation.depth, evaluation.geometry),
        ]
    )
    formats.write_artifact(os.path.join(output, "report.txt"), formats.Serializable(report))
    formats.write_artifact(os.path.join(output, "table.md"), formats.Serializable(table))
    click.echo(table, nl=False)


def main(argv: List[str] = None) -> int:
    try:
        result = cli.main(args=argv, prog_name="voxfuse", standalone_mode=False)
        return result if isinstance(result, int) else EXIT_SUCCESS
    except click.exceptions.Exit as e:
        return e.exit_code
    except (click.ClickException, click.Abort) as e:
        click.echo(f"Error: {e}", err=True)
        return EXIT_USAGE
    except MessagesError as e:
        click.echo(f"Error: {e}", err=True)
        codes = {m.code for m in e.messages}
        return EXIT_USAGE if codes <= {FieldError.code} else EXIT_DATA
    except VoxFuseError as e:
        click.echo(f"Error: {e}", err=True)
        return EXIT_USAGE if isinstance(e, FieldError) else EXIT_DATA


if __name__ == '__main__':
    sys.exit(main())
