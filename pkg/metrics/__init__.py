from .stream_metrics import StreamErfMetrics, AverageMeter
