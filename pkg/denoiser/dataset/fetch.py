"""
Dataset archive download client.

Downloads over HTTP(S) with one retry on transient failures, verifies an
optional SHA-256 digest, then extracts tar or zip archives.

Callers must not run two fetches against the same destination concurrently.
"""

import asyncio
import hashlib
import tarfile
import zipfile
from pathlib import Path, PurePosixPath
from typing import Optional
from urllib.parse import urlparse

import aiohttp
from loguru import logger

from denoiser.errors import (
    ChecksumMismatchError,
    ExtractionFailureError,
    NetworkFailureError,
)

CHUNK_SIZE = 1 << 20
RETRY_DELAY_SECONDS = 1.0


def _archive_name(url: str) -> str:
    name = PurePosixPath(urlparse(url).path).name
    return name or "dataset.archive"


async def _download(session: aiohttp.ClientSession, url: str, target: Path) -> str:
    """Stream ``url`` to ``target`` and return its SHA-256 hex digest."""
    digest = hashlib.sha256()
    async with session.get(url) as resp:
        if resp.status >= 500:
            raise aiohttp.ClientResponseError(
                resp.request_info, resp.history, status=resp.status, message=resp.reason or ""
            )
        if resp.status != 200:
            raise NetworkFailureError(f"GET {url} returned HTTP {resp.status}")
        with open(target, "wb") as f:
            async for chunk in resp.content.iter_chunked(CHUNK_SIZE):
                digest.update(chunk)
                f.write(chunk)
    return digest.hexdigest()


def _check_member(dest_dir: Path, name: str) -> None:
    resolved = (dest_dir / name).resolve()
    if dest_dir.resolve() not in resolved.parents and resolved != dest_dir.resolve():
        raise ExtractionFailureError(f"archive member escapes destination: {name}")


def extract_archive(archive: Path, dest_dir: Path) -> list[str]:
    """
    Unpack a tar (any compression) or zip archive into ``dest_dir``.

    Raises:
        ExtractionFailureError: for unreadable archives or unsafe member paths
    """
    try:
        if tarfile.is_tarfile(archive):
            with tarfile.open(archive) as tar:
                members = tar.getmembers()
                for member in members:
                    _check_member(dest_dir, member.name)
                    if member.issym() or member.islnk():
                        raise ExtractionFailureError(f"links are not allowed: {member.name}")
                if hasattr(tarfile, "data_filter"):
                    tar.extractall(dest_dir, members=members, filter="data")
                else:
                    tar.extractall(dest_dir, members=members)
                return [m.name for m in members if m.isfile()]
        if zipfile.is_zipfile(archive):
            with zipfile.ZipFile(archive) as zf:
                names = zf.namelist()
                for name in names:
                    _check_member(dest_dir, name)
                zf.extractall(dest_dir)
                return [n for n in names if not n.endswith("/")]
    except (tarfile.TarError, zipfile.BadZipFile, OSError) as e:
        raise ExtractionFailureError(f"Cannot extract {archive}: {e}") from e

    raise ExtractionFailureError(f"{archive.name} is neither a tar nor a zip archive")


async def fetch_dataset_async(
    url: str,
    dest_dir: str | Path,
    expected_checksum: Optional[str] = None,
    timeout_seconds: float = 3600.0,
) -> list[str]:
    """
    Download and extract a dataset archive.

    Returns:
        Names of the extracted files

    Raises:
        NetworkFailureError: after the retry is exhausted
        ChecksumMismatchError: the archive is deleted and nothing is extracted
        ExtractionFailureError: unreadable archive
    """
    dest = Path(dest_dir)
    dest.mkdir(parents=True, exist_ok=True)
    archive = dest / _archive_name(url)

    timeout = aiohttp.ClientTimeout(total=timeout_seconds)
    digest: Optional[str] = None
    last_error: Optional[Exception] = None

    async with aiohttp.ClientSession(timeout=timeout) as session:
        for attempt in (1, 2):
            try:
                digest = await _download(session, url, archive)
                break
            except (aiohttp.ClientError, asyncio.TimeoutError) as e:
                last_error = e
                logger.warning(f"Download attempt {attempt} failed: {e}")
                if attempt == 1:
                    await asyncio.sleep(RETRY_DELAY_SECONDS)

    if digest is None:
        archive.unlink(missing_ok=True)
        raise NetworkFailureError(f"Cannot download {url}: {last_error}")

    logger.info(f"Downloaded {archive.name} ({archive.stat().st_size} bytes, sha256 {digest[:12]}...)")

    if expected_checksum and digest.lower() != expected_checksum.strip().lower():
        archive.unlink(missing_ok=True)
        raise ChecksumMismatchError(
            f"{archive.name}: expected sha256 {expected_checksum}, got {digest}"
        )

    files = extract_archive(archive, dest)
    logger.info(f"Extracted {len(files)} files into {dest}")
    return files


def fetch_dataset(
    url: str,
    dest_dir: str | Path,
    expected_checksum: Optional[str] = None,
) -> list[str]:
    """Blocking wrapper around fetch_dataset_async."""
    return asyncio.run(fetch_dataset_async(url, dest_dir, expected_checksum))
